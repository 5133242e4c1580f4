#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "stablecouples/constructions.hpp"
#include "stablecouples/json_io.hpp"
#include "stablecouples/stability.hpp"

using namespace stablecouples;

TEST_CASE("the worked examples transcribe their tables") {
  MarketInstance e1 = example1();
  CHECK(e1.hospital_count() == 2);
  CHECK(e1.doctor_count() == 4);
  CHECK(e1.hospitals[0].capacity == 2);
  // common ranking f > s1 > s2 > m
  const Ranking& common = e1.hospital_prefs[0].individual;
  CHECK(e1.doctors[common.at(0)] == "f");
  CHECK(e1.doctors[common.at(1)] == "s1");
  CHECK(e1.doctors[common.at(2)] == "s2");
  CHECK(e1.doctors[common.at(3)] == "m");

  MarketInstance e2 = example2();
  const Ranking& h3 = e2.hospital_prefs[2].individual;
  CHECK(e2.doctors[h3.at(0)] == "s3");
  CHECK(e2.doctors[h3.at(1)] == "s4");
  CHECK(e2.doctors[h3.at(2)] == "m");
  CHECK(e2.doctors[h3.at(3)] == "f");

  MarketInstance e3 = example3();
  const Ranking& h3b = e3.hospital_prefs[2].individual;
  CHECK(e3.doctors[h3b.at(2)] == "f");
  CHECK(e3.doctors[h3b.at(3)] == "m");
  // identical to example two everywhere else
  CHECK(e3.doctor_prefs == e2.doctor_prefs);
  CHECK(e3.couple_prefs == e2.couple_prefs);
  CHECK(e3.hospital_prefs[0].individual == e2.hospital_prefs[0].individual);
  CHECK(e3.hospital_prefs[1].individual == e2.hospital_prefs[1].individual);
}

TEST_CASE("rf violation family: empty stable sets at several shapes") {
  SUBCASE("minimal two-hospital shape") {
    MarketInstance inst = build_rf_violation(default_rf_violation_spec({2, 2}));
    CHECK(inst.doctor_count() == 4);
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
    CHECK(enumerate_stable(inst, Semantics::ForcedOnly).empty());
  }
  SUBCASE("a third hospital saturated by fillers") {
    MarketInstance inst = build_rf_violation(default_rf_violation_spec({2, 2, 2}));
    CHECK(inst.doctor_count() == 6);
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
  }
  SUBCASE("an rf-satisfying couple is refused") {
    RfViolationSpec spec = default_rf_violation_spec({2, 2});
    // make the couple responsive: no together-lift at all
    spec.couple_pairs = {{1, 0}, {1, 1}, {0, 0}, {0, 1}};
    CHECK_THROWS_AS(build_rf_violation(spec), ConstructionError);
  }
  SUBCASE("a preference outside the togetherness restriction is refused") {
    RfViolationSpec spec = default_rf_violation_spec({2, 2});
    spec.couple_pairs = {{0, 1}, {1, 0}, {1, 1}, {0, 0}};  // lifts a split pair
    CHECK_THROWS_AS(build_rf_violation(spec), ConstructionError);
  }
}

TEST_CASE("scpi violation family: both proof cases yield empty stable sets") {
  SUBCASE("case two: the weak member ranked last, two doctors between") {
    MarketInstance inst = build_scpi_violation(default_scpi_violation_spec({2, 2}, 2));
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
    CHECK(enumerate_stable(inst, Semantics::ForcedOnly).empty());
  }
  SUBCASE("case one: one doctor between, another below") {
    MarketInstance inst = build_scpi_violation(default_scpi_violation_spec({2, 2}, 1));
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
  }
  SUBCASE("larger capacities") {
    MarketInstance inst = build_scpi_violation(default_scpi_violation_spec({3, 2}, 2));
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
  }
  SUBCASE("a closeness-satisfying ranking is refused") {
    ScpiViolationSpec spec;
    spec.capacities = {2, 2};
    spec.ranking = {"f", "m", "a", "b"};
    spec.singles = {"a", "b"};
    spec.couples = {{"f", "m"}};
    CHECK_THROWS_AS(build_scpi_violation(spec), ConstructionError);
  }
}

TEST_CASE("srf violation family: the pattern embeds and kills stability") {
  SUBCASE("three hospitals reproduce the worked example's shape") {
    MarketInstance inst = build_srf_violation(default_srf_violation_spec({2, 2, 2}));
    CHECK(inst.doctor_count() == 6);
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
    CHECK(enumerate_stable(inst, Semantics::ForcedOnly).empty());
  }
  SUBCASE("a saturated fourth hospital changes nothing") {
    MarketInstance inst = build_srf_violation(default_srf_violation_spec({2, 2, 2, 2}));
    CHECK(inst.doctor_count() == 8);
    CHECK(enumerate_stable(inst, Semantics::RankVectorLex).empty());
  }
  SUBCASE("an srf-satisfying couple is refused") {
    SrfViolationSpec spec = default_srf_violation_spec({2, 2, 2});
    // fully responsive couple: no lift of (h3,h3) above (h3,h2)
    spec.couple_pairs = {{0, 1}, {0, 0}, {0, 2}, {2, 1}, {2, 0},
                         {2, 2}, {1, 1}, {1, 0}, {1, 2}};
    CHECK_THROWS_AS(build_srf_violation(spec), ConstructionError);
  }
}

TEST_CASE("builders emit strict-valid instances with their axiom profiles") {
  MarketInstance rf = build_rf_violation(default_rf_violation_spec({2, 3}));
  CHECK(validate_instance(rf, ValidationMode::Strict).ok());
  CHECK(check_cpi(rf).verdict.holds);
  CHECK(check_rvt_all(rf).holds);
  CHECK(!check_rf(rf).holds);

  MarketInstance scpi = build_scpi_violation(default_scpi_violation_spec({2, 2, 2}, 2));
  CHECK(validate_instance(scpi, ValidationMode::Strict).ok());
  CHECK(check_cpi(scpi).verdict.holds);
  CHECK(!check_scpi(scpi).holds);
  CHECK(check_rvt_all(scpi).holds);

  MarketInstance srf = build_srf_violation(default_srf_violation_spec({2, 2, 2}));
  CHECK(validate_instance(srf, ValidationMode::Strict).ok());
  CHECK(check_cpc(srf).holds);
  CHECK(check_rf(srf).holds);
  CHECK(!check_srf(srf).holds);
}

TEST_CASE("fixture files equal the builders' canonical serialization") {
  auto matches_fixture = [](const MarketInstance& inst, const std::string& name) {
    std::ifstream in(std::string(SC_FIXTURES_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == serialize_instance(inst));
  };
  matches_fixture(example1(), "example1.json");
  matches_fixture(example2(), "example2.json");
  matches_fixture(example3(), "example3.json");
}
