#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "stablecouples/constructions.hpp"
#include "stablecouples/json_io.hpp"
#include "stablecouples/solvers.hpp"
#include "support/generators.hpp"

using namespace stablecouples;
using testgen::Rng;

namespace {

bool in_stable_set(const MarketInstance& inst, const Matching& mu) {
  auto stable = enumerate_stable(inst, Semantics::RankVectorLex);
  return std::find(stable.begin(), stable.end(), mu) != stable.end();
}

MarketInstance example1_rf_compliant() {
  MarketInstance inst = example1();
  // (h2,h1) > (h2,h2) > (h1,h1) > (h1,h2): the compromise now falls on m
  std::vector<int> order = {pair_code(1, 0, 2), pair_code(1, 1, 2),
                            pair_code(0, 0, 2), pair_code(0, 1, 2)};
  for (int code : canonical_none_pairs(inst.doctor_prefs[2], inst.doctor_prefs[3], 2))
    order.push_back(code);
  inst.couple_prefs[0] = Ranking(order, 9);
  return inst;
}

}  // namespace

TEST_CASE("alg1 solves the rf-compliant variant of example one") {
  MarketInstance inst = example1_rf_compliant();
  SolverReport rep = solve_alg1(inst);
  REQUIRE(!rep.refused);
  REQUIRE(rep.matching.has_value());
  auto at = [&](const char* id) { return rep.matching->of(*inst.doctor_by_id(id)); };
  CHECK(at("f") == 1);
  CHECK(at("s1") == 1);
  CHECK(at("s2") == 0);
  CHECK(at("m") == 0);
  REQUIRE(rep.stability.has_value());
  CHECK(rep.stability->status ==
        StabilityVerdict::Status::StableForAllResponsiveExtensions);
  CHECK(in_stable_set(inst, *rep.matching));
}

TEST_CASE("alg1 refuses example one with the rf witness") {
  SolverReport rep = solve_alg1(example1());
  CHECK(rep.refused);
  bool saw_rf = false;
  for (const AxiomVerdict& v : rep.preconditions)
    if (v.axiom == Axiom::Rf) {
      saw_rf = true;
      CHECK(!v.holds);
      const auto& w = std::get<RfWitness>(*v.witness);
      CHECK(w.h == 0);
      CHECK(w.h_prime == 1);
    }
  CHECK(saw_rf);
  CHECK(!rep.matching.has_value());
}

TEST_CASE("alg1 on a couple-free market degenerates to serial dictatorship") {
  Rng rng(606);
  for (int round = 0; round < 40; ++round) {
    MarketInstance inst = testgen::random_couple_free_cpi(rng, 6);
    SolverReport a = solve_alg1(inst);
    SolverReport b = solve_sda(inst);
    REQUIRE(!a.refused);
    CHECK(*a.matching == *b.matching);
  }
}

TEST_CASE("alg2: an adjacent couple lands on its best open pair") {
  // common ranking f > m > s1 > s2 with capacities (2,2)
  MarketInstance inst = example1();
  Ranking common = testgen::make_doctor_list({2, 3, 0, 1}, 4);
  inst.hospital_prefs[0].individual = common;
  inst.hospital_prefs[1].individual = common;
  SolverReport rep = solve_alg2(inst);
  REQUIRE(!rep.refused);
  // the couple proposes first and both hospitals are empty: it takes the top
  // pair of its preference, (h1,h1)
  CHECK(rep.matching->of(2) == 0);
  CHECK(rep.matching->of(3) == 0);
  REQUIRE(rep.stability.has_value());
  CHECK(rep.stability->stable());
  CHECK(in_stable_set(inst, *rep.matching));
}

TEST_CASE("alg2 refuses example one: the couple sits too far apart") {
  SolverReport rep = solve_alg2(example1());
  CHECK(rep.refused);
  bool saw = false;
  for (const AxiomVerdict& v : rep.preconditions)
    if (v.axiom == Axiom::Scpi) saw = !v.holds;
  CHECK(saw);
}

TEST_CASE("alg2 terminal rule: a single doctor wedged inside the last couple") {
  // common ranking s1 > s2 > f > s' > m, capacities (2,3)
  MarketInstance inst;
  inst.hospitals = {{"h1", 2}, {"h2", 3}};
  inst.doctors = {"s1", "s2", "sp", "f", "m"};
  inst.singles = {0, 1, 2};
  inst.couples = {{3, 4}};
  inst.doctor_prefs.resize(5);
  inst.doctor_prefs[0] = testgen::make_hospital_list({0, 1}, 2);
  inst.doctor_prefs[1] = testgen::make_hospital_list({0, 1}, 2);
  inst.doctor_prefs[2] = testgen::make_hospital_list({1, 0}, 2);  // s' likes h2
  inst.doctor_prefs[3] = testgen::make_hospital_list({0, 1}, 2);
  inst.doctor_prefs[4] = testgen::make_hospital_list({0, 1}, 2);
  Rng pref_rng(1);
  inst.couple_prefs = {testgen::random_unrestricted_pref(pref_rng, 2)};
  Ranking common = testgen::make_doctor_list({0, 1, 3, 2, 4}, 5);
  inst.hospital_prefs.assign(2, {common, SetExtension::RankLex, {}});

  SolverReport rep = solve_alg2(inst);
  REQUIRE(!rep.refused);
  bool case2 = false;
  for (const std::string& note : rep.notes) case2 |= note.find("case 2") != std::string::npos;
  CHECK(case2);
  REQUIRE(rep.stability.has_value());
  CHECK(rep.stability->stable());
  CHECK(in_stable_set(inst, *rep.matching));
}

TEST_CASE("alg2 on a couple-free market equals serial dictatorship") {
  Rng rng(607);
  for (int round = 0; round < 40; ++round) {
    MarketInstance inst = testgen::random_couple_free_cpi(rng, 6);
    SolverReport a = solve_alg2(inst);
    SolverReport b = solve_sda(inst);
    REQUIRE(!a.refused);
    CHECK(*a.matching == *b.matching);
  }
}

TEST_CASE("alg3 refuses example three with the srf witness at (h3, h2)") {
  SolverReport rep = solve_alg3(example3());
  CHECK(rep.refused);
  bool saw = false;
  for (const AxiomVerdict& v : rep.preconditions)
    if (v.axiom == Axiom::Srf) {
      saw = true;
      CHECK(!v.holds);
      const auto& w = std::get<SrfWitness>(*v.witness);
      CHECK(w.h == 2);
      CHECK(w.h_prime == 1);
    }
  CHECK(saw);
}

TEST_CASE("alg3 and alg1 both land in the stable set under a shared guard") {
  Rng rng(608);
  int rounds = 0;
  for (int attempt = 0; attempt < 60 && rounds < 25; ++attempt) {
    MarketInstance inst = testgen::random_cpi_rvt_rf(rng);
    if (inst.hospital_count() != 2) continue;  // srf is free with two hospitals
    SolverReport one = solve_alg1(inst);
    SolverReport three = solve_alg3(inst);
    REQUIRE(!one.refused);
    REQUIRE(!three.refused);
    CHECK(in_stable_set(inst, *one.matching));
    CHECK(in_stable_set(inst, *three.matching));
    ++rounds;
  }
  CHECK(rounds == 25);
}

TEST_CASE("alg3 on a couple-free market is plain deferred acceptance") {
  Rng rng(609);
  for (int round = 0; round < 40; ++round) {
    MarketInstance inst = testgen::random_couple_free_cpi(rng, 6);
    SolverReport a = solve_alg3(inst);
    SolverReport b = solve_dpda(inst);
    REQUIRE(!a.refused);
    CHECK(*a.matching == *b.matching);
  }
}

TEST_CASE("alg4 handles couples in separate blocks and stays stable") {
  Rng rng(610);
  int two_couples = 0;
  for (int round = 0; round < 60; ++round) {
    MarketInstance inst = testgen::random_scpc_market(rng);
    SolverReport rep = solve_alg4(inst);
    REQUIRE(!rep.refused);
    REQUIRE(rep.stability.has_value());
    CHECK(rep.stability->status ==
          StabilityVerdict::Status::StableForAllResponsiveExtensions);
    CHECK(in_stable_set(inst, *rep.matching));
    if (inst.couple_count() >= 2) ++two_couples;
  }
  CHECK(two_couples > 5);
}

TEST_CASE("alg4 on cpi markets agrees with the stable set like alg1") {
  Rng rng(611);
  for (int round = 0; round < 25; ++round) {
    MarketInstance inst = testgen::random_cpi_rvt_rf(rng);
    SolverReport one = solve_alg1(inst);
    SolverReport four = solve_alg4(inst);
    REQUIRE(!one.refused);
    REQUIRE(!four.refused);
    CHECK(in_stable_set(inst, *one.matching));
    CHECK(in_stable_set(inst, *four.matching));
  }
}

TEST_CASE("alg4 on a couple-free market is plain deferred acceptance") {
  Rng rng(612);
  for (int round = 0; round < 40; ++round) {
    MarketInstance inst = testgen::random_couple_free_cpi(rng, 6);
    SolverReport a = solve_alg4(inst);
    SolverReport b = solve_dpda(inst);
    REQUIRE(!a.refused);
    CHECK(*a.matching == *b.matching);
  }
}

TEST_CASE("solver runs are deterministic") {
  Rng rng(613);
  for (int round = 0; round < 10; ++round) {
    MarketInstance inst = testgen::random_scpi_market(rng, round % 2 == 0);
    SolverReport a = solve_alg2(inst);
    SolverReport b = solve_alg2(inst);
    REQUIRE(!a.refused);
    CHECK(*a.matching == *b.matching);
    CHECK(a.trace.events.size() == b.trace.events.size());
  }
}

TEST_CASE("feasibility: guarded outputs seat everyone when seats match doctors") {
  Rng rng(614);
  for (int round = 0; round < 30; ++round) {
    MarketInstance inst = testgen::random_cpi_rvt_rf(rng);
    SolverReport rep = solve_alg1(inst);
    REQUIRE(!rep.refused);
    CHECK(rep.matching->respects_capacities(inst));
    CHECK(rep.matching->everyone_matched(inst));
  }
}

TEST_CASE("solver report serializes with preconditions and stability") {
  SolverReport rep = solve_alg1(example1());
  auto doc = solver_report_to_json(example1(), rep, true);
  CHECK(doc["refused"] == true);
  CHECK(doc["preconditions"].size() >= 2);
}
