#include "stablecouples/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "stablecouples/axioms.hpp"

namespace stablecouples {

namespace {

Ranking hospital_list(std::vector<int> order, int n_hospitals) {
  order.push_back(n_hospitals);  // the unmatched outcome, always last
  return Ranking(std::move(order), n_hospitals + 1);
}

// Appends every hospital missing from the prefix, by index, then none.
Ranking hospital_list_completed(std::vector<int> prefix, int n_hospitals) {
  std::vector<bool> seen(n_hospitals, false);
  for (int h : prefix) seen.at(h) = true;
  for (int h = 0; h < n_hospitals; ++h)
    if (!seen[h]) prefix.push_back(h);
  return hospital_list(std::move(prefix), n_hospitals);
}

Ranking doctor_list(std::vector<int> order, int n_doctors) {
  order.push_back(n_doctors);
  return Ranking(std::move(order), n_doctors + 1);
}

// Couple preference from an ordered list of matched pairs plus the canonical
// tail of pairs with an unmatched coordinate.
Ranking couple_list(const std::vector<std::pair<int, int>>& matched, const Ranking& pf,
                    const Ranking& pm, int n_hospitals) {
  std::vector<int> order;
  for (auto [a, b] : matched) order.push_back(pair_code(a, b, n_hospitals));
  for (int code : canonical_none_pairs(pf, pm, n_hospitals)) order.push_back(code);
  return Ranking(std::move(order), (n_hospitals + 1) * (n_hospitals + 1));
}

void check_built(const MarketInstance& inst, const char* family) {
  ValidationReport rep = validate_instance(inst, ValidationMode::Strict);
  if (!rep.ok())
    throw std::logic_error(std::string(family) + " built an invalid instance: " +
                           rep.issues.front().message);
}

}  // namespace

Ranking responsive_couple_order(const Ranking& pf, const Ranking& pm, int n_hospitals) {
  std::vector<int> codes((n_hospitals + 1) * (n_hospitals + 1));
  std::iota(codes.begin(), codes.end(), 0);
  auto key = [&](int code) {
    auto [a, b] = pair_decode(code, n_hospitals);
    int unmatched = a == n_hospitals || b == n_hospitals ? 1 : 0;
    return std::tuple(unmatched, pf.position_of(a), pm.position_of(b));
  };
  std::sort(codes.begin(), codes.end(),
            [&](int x, int y) { return key(x) < key(y); });
  return Ranking(std::move(codes), (n_hospitals + 1) * (n_hospitals + 1));
}

MarketInstance example1() {
  MarketInstance inst;
  inst.hospitals = {{"h1", 2}, {"h2", 2}};
  inst.doctors = {"s1", "s2", "f", "m"};
  inst.singles = {0, 1};
  inst.couples = {{2, 3}};
  const int H = 2;
  const int h1 = 0, h2 = 1;

  inst.doctor_prefs.resize(4);
  inst.doctor_prefs[0] = hospital_list({h2, h1}, H);  // s1
  inst.doctor_prefs[1] = hospital_list({h1, h2}, H);  // s2
  inst.doctor_prefs[2] = hospital_list({h2, h1}, H);  // f
  inst.doctor_prefs[3] = hospital_list({h1, h2}, H);  // m

  inst.couple_prefs.resize(1);
  inst.couple_prefs[0] = couple_list({{h1, h1}, {h2, h1}, {h2, h2}, {h1, h2}},
                                     inst.doctor_prefs[2], inst.doctor_prefs[3], H);

  Ranking common = doctor_list({2, 0, 1, 3}, 4);  // f, s1, s2, m
  inst.hospital_prefs = {{common, SetExtension::RankLex, {}},
                         {common, SetExtension::RankLex, {}}};
  check_built(inst, "example1");
  return inst;
}

namespace {

// Shared skeleton of the two three-hospital examples; they differ only in
// whether the third hospital ranks f above m.
MarketInstance three_hospital_example(bool cpc_at_h3) {
  MarketInstance inst;
  inst.hospitals = {{"h1", 2}, {"h2", 2}, {"h3", 2}};
  inst.doctors = {"s1", "s2", "s3", "s4", "f", "m"};
  inst.singles = {0, 1, 2, 3};
  inst.couples = {{4, 5}};
  const int H = 3;
  const int h1 = 0, h2 = 1, h3 = 2;

  inst.doctor_prefs.resize(6);
  inst.doctor_prefs[0] = hospital_list({h2, h1, h3}, H);  // s1
  inst.doctor_prefs[1] = hospital_list({h3, h1, h2}, H);  // s2
  inst.doctor_prefs[2] = hospital_list({h1, h2, h3}, H);  // s3
  inst.doctor_prefs[3] = hospital_list({h2, h1, h3}, H);  // s4
  inst.doctor_prefs[4] = hospital_list({h1, h3, h2}, H);  // f
  inst.doctor_prefs[5] = hospital_list({h2, h1, h3}, H);  // m

  inst.couple_prefs.resize(1);
  inst.couple_prefs[0] = couple_list(
      {{h1, h2}, {h1, h1}, {h1, h3}, {h3, h3}, {h3, h2}, {h3, h1},
       {h2, h2}, {h2, h1}, {h2, h3}},
      inst.doctor_prefs[4], inst.doctor_prefs[5], H);

  // s3, s4 top the columns everywhere; the couple sits mid-ranking.
  Ranking p_h1 = doctor_list({2, 3, 0, 4, 5, 1}, 6);  // s3 s4 s1 f m s2
  Ranking p_h2 = doctor_list({3, 2, 4, 5, 0, 1}, 6);  // s4 s3 f m s1 s2
  Ranking p_h3 = cpc_at_h3 ? doctor_list({2, 3, 4, 5, 0, 1}, 6)   // s3 s4 f m s1 s2
                           : doctor_list({2, 3, 5, 4, 0, 1}, 6);  // s3 s4 m f s1 s2
  inst.hospital_prefs = {{p_h1, SetExtension::RankLex, {}},
                         {p_h2, SetExtension::RankLex, {}},
                         {p_h3, SetExtension::RankLex, {}}};
  return inst;
}

}  // namespace

MarketInstance example2() {
  MarketInstance inst = three_hospital_example(false);
  check_built(inst, "example2");
  return inst;
}

MarketInstance example3() {
  MarketInstance inst = three_hospital_example(true);
  check_built(inst, "example3");
  return inst;
}

MarketInstance build_rf_violation(const RfViolationSpec& spec) {
  const int H = static_cast<int>(spec.capacities.size());
  if (H < 2) throw ConstructionError("rf_violation needs at least two hospitals");
  if (spec.h1 < 0 || spec.h1 >= H || spec.h2 < 0 || spec.h2 >= H || spec.h1 == spec.h2)
    throw ConstructionError("rf_violation: h1 and h2 must be distinct hospitals");
  for (int k : spec.capacities)
    if (k < 2) throw ConstructionError("rf_violation: capacities must be at least 2");

  Ranking pf = hospital_list_completed(spec.pf, H);
  Ranking pm = hospital_list_completed(spec.pm, H);
  if (static_cast<int>(spec.couple_pairs.size()) != H * H)
    throw ConstructionError("rf_violation: list every fully matched pair once");
  Ranking cp = couple_list(spec.couple_pairs, pf, pm, H);

  if (!check_rvt(cp, pf, pm, H).holds)
    throw ConstructionError(
        "rf_violation: the couple preference must stay within the togetherness "
        "restriction");
  int together = pair_code(spec.h1, spec.h1, H);
  int split = pair_code(spec.h2, spec.h1, H);
  if (!(cp.prefers(together, split) && pf.prefers(spec.h2, spec.h1)))
    throw ConstructionError(
        "rf_violation: need (h1,h1) above (h2,h1) while f prefers h2 to h1");

  int total = 0;
  for (int k : spec.capacities) total += k;
  int n_fillers = total - 4;

  MarketInstance inst;
  for (int h = 0; h < H; ++h)
    inst.hospitals.push_back({"h" + std::to_string(h + 1), spec.capacities[h]});
  for (int i = 0; i < n_fillers; ++i)
    inst.doctors.push_back(spec.filler_prefix + std::to_string(i + 1));
  int f = -1, m = -1, d1 = -1, d2 = -1;
  inst.doctors.push_back("f");
  f = inst.doctor_count() - 1;
  inst.doctors.push_back("d1");
  d1 = inst.doctor_count() - 1;
  inst.doctors.push_back("d2");
  d2 = inst.doctor_count() - 1;
  inst.doctors.push_back("m");
  m = inst.doctor_count() - 1;
  for (int d = 0; d < inst.doctor_count(); ++d)
    if (d != f && d != m) inst.singles.push_back(d);
  inst.couples = {{f, m}};

  // Top choices: the violation hospitals keep two seats for {f, d1, d2, m};
  // every other hospital is saturated by better-ranked doctors.
  std::vector<int> quota(H);
  for (int h = 0; h < H; ++h)
    quota[h] = spec.capacities[h] - (h == spec.h1 || h == spec.h2 ? 2 : 0);
  inst.doctor_prefs.resize(inst.doctor_count());
  int bucket = 0;
  for (int i = 0; i < n_fillers; ++i) {
    while (quota[bucket] == 0) ++bucket;
    --quota[bucket];
    inst.doctor_prefs[i] = hospital_list_completed({bucket}, H);
  }
  inst.doctor_prefs[f] = pf;
  inst.doctor_prefs[m] = pm;
  inst.doctor_prefs[d1] = hospital_list_completed({spec.h1}, H);
  inst.doctor_prefs[d2] = hospital_list_completed({spec.h2}, H);
  inst.couple_prefs = {cp};

  // Common ranking: fillers first, then f, d1, d2, m.
  std::vector<int> common;
  for (int i = 0; i < n_fillers; ++i) common.push_back(i);
  common.insert(common.end(), {f, d1, d2, m});
  Ranking individual = doctor_list(std::move(common), inst.doctor_count());
  for (int h = 0; h < H; ++h)
    inst.hospital_prefs.push_back({individual, SetExtension::RankLex, {}});

  check_built(inst, "rf_violation");
  if (check_rf(inst).holds)
    throw std::logic_error("rf_violation built an rf-satisfying instance");
  return inst;
}

MarketInstance build_scpi_violation(const ScpiViolationSpec& spec) {
  const int H = static_cast<int>(spec.capacities.size());
  if (H < 2) throw ConstructionError("scpi_violation needs at least two hospitals");
  for (int k : spec.capacities)
    if (k < 2) throw ConstructionError("scpi_violation: capacities must be at least 2");
  int total = 0;
  for (int k : spec.capacities) total += k;
  const int D = static_cast<int>(spec.ranking.size());
  if (total != D)
    throw ConstructionError("scpi_violation: capacities must sum to the doctor count");

  // Resolve the skeleton.
  MarketInstance inst;
  for (int h = 0; h < H; ++h)
    inst.hospitals.push_back({"h" + std::to_string(h + 1), spec.capacities[h]});
  inst.doctors = spec.ranking;
  auto doctor_index = [&](const std::string& id) {
    auto d = inst.doctor_by_id(id);
    if (!d) throw ConstructionError("scpi_violation: " + id + " not in the ranking");
    return *d;
  };
  std::vector<int> in_couple(D, -1);
  for (const auto& [fid, mid] : spec.couples) {
    Couple c{doctor_index(fid), doctor_index(mid)};
    // Normalize labels against the common ranking (lower position is better).
    if (c.f > c.m) std::swap(c.f, c.m);
    in_couple[c.f] = in_couple[c.m] = static_cast<int>(inst.couples.size());
    inst.couples.push_back(c);
  }
  for (const std::string& id : spec.singles) {
    int d = doctor_index(id);
    if (in_couple[d] >= 0)
      throw ConstructionError("scpi_violation: " + id + " is both single and coupled");
    inst.singles.push_back(d);
  }
  if (static_cast<int>(inst.singles.size()) + 2 * inst.couple_count() != D)
    throw ConstructionError("scpi_violation: ranking must cover exactly the doctors");

  // The ranking index is the rank; doctor d's position is d itself.
  int min_capacity = *std::min_element(spec.capacities.begin(), spec.capacities.end());
  int couple = -1, case_tag = 0;
  for (int c = 0; c < inst.couple_count() && couple < 0; ++c) {
    int pos_f = inst.couples[c].f, pos_m = inst.couples[c].m;
    int between = pos_m - pos_f - 1;
    bool m_last = pos_m == D - 1;
    if (!m_last && between > 0 && pos_m >= min_capacity) {
      couple = c;
      case_tag = 1;
    } else if (m_last && between > 1) {
      couple = c;
      case_tag = 2;
    }
  }
  if (couple < 0)
    throw ConstructionError("scpi_violation: the ranking satisfies the closeness "
                            "condition for every couple");
  int f = inst.couples[couple].f, m = inst.couples[couple].m;
  int d1 = f + 1;  // highest-ranked doctor strictly between f and m
  int d2 = case_tag == 1 ? m + 1 : f + 2;

  int h1 = spec.h1, h2 = spec.h2;
  if (h1 < 0) {
    h1 = 0;
    if (case_tag == 1)
      while (h1 < H && spec.capacities[h1] > m /* doctors above m */) ++h1;
    if (h1 >= H)
      throw ConstructionError("scpi_violation: no hospital small enough for the "
                              "chosen couple");
  } else if (case_tag == 1 && spec.capacities[h1] > m) {
    throw ConstructionError("scpi_violation: h1 capacity exceeds the doctors above m");
  }
  if (h2 < 0) h2 = h1 == 0 ? 1 : 0;
  if (h1 == h2 || h1 >= H || h2 >= H)
    throw ConstructionError("scpi_violation: h1 and h2 must be distinct hospitals");

  // Preferences of the four designated doctors cross over h1/h2.
  inst.doctor_prefs.resize(D);
  inst.doctor_prefs[f] = hospital_list_completed({h2, h1}, H);
  inst.doctor_prefs[m] = hospital_list_completed({h1, h2}, H);
  inst.doctor_prefs[d1] = hospital_list_completed({h1, h2}, H);
  inst.doctor_prefs[d2] = hospital_list_completed({h2, h1}, H);

  // Everyone else: kappa_h1 - 2 of the doctors above m top h1, then fill h2
  // and the outside hospitals exactly.
  std::vector<int> quota(H);
  for (int h = 0; h < H; ++h)
    quota[h] = spec.capacities[h] - (h == h1 || h == h2 ? 2 : 0);
  int h1_above_needed = spec.capacities[h1] - 2;
  for (int d = 0; d < D && h1_above_needed > 0; ++d) {
    if (d == f || d == m || d == d1 || d == d2 || d >= m) continue;
    inst.doctor_prefs[d] = hospital_list_completed({h1}, H);
    --quota[h1];
    --h1_above_needed;
  }
  if (h1_above_needed > 0)
    throw ConstructionError("scpi_violation: not enough doctors above m to shield h1");
  int bucket = 0;
  for (int d = 0; d < D; ++d) {
    if (d == f || d == m || d == d1 || d == d2 || !inst.doctor_prefs[d].empty()) continue;
    while (bucket < H && (bucket == h1 || quota[bucket] == 0)) ++bucket;
    if (bucket >= H) throw std::logic_error("scpi_violation: quota bookkeeping broke");
    --quota[bucket];
    inst.doctor_prefs[d] = hospital_list_completed({bucket}, H);
  }

  // Couple preferences: the violating couple lifts (h1,h1) over the crossed
  // top pairs; every other couple is responsive.
  inst.couple_prefs.resize(inst.couple_count());
  for (int c = 0; c < inst.couple_count(); ++c) {
    const Ranking& pf = inst.doctor_prefs[inst.couples[c].f];
    const Ranking& pm = inst.doctor_prefs[inst.couples[c].m];
    if (c != couple) {
      inst.couple_prefs[c] = responsive_couple_order(pf, pm, H);
      continue;
    }
    std::vector<int> head = {pair_code(h1, h1, H), pair_code(h2, h1, H),
                             pair_code(h2, h2, H), pair_code(h1, h2, H)};
    std::vector<int> order = head;
    Ranking canon = responsive_couple_order(pf, pm, H);
    for (int p = 0; p < canon.size(); ++p)
      if (std::find(head.begin(), head.end(), canon.at(p)) == head.end())
        order.push_back(canon.at(p));
    inst.couple_prefs[c] = Ranking(std::move(order), (H + 1) * (H + 1));
  }

  // Common ranking shared by every hospital.
  std::vector<int> common(D);
  std::iota(common.begin(), common.end(), 0);
  Ranking individual = doctor_list(std::move(common), D);
  for (int h = 0; h < H; ++h)
    inst.hospital_prefs.push_back({individual, SetExtension::RankLex, {}});

  check_built(inst, "scpi_violation");
  if (check_scpi(inst).holds)
    throw std::logic_error("scpi_violation built an scpi-satisfying instance");
  if (!check_rvt_all(inst).holds)
    throw std::logic_error("scpi_violation left the togetherness restriction");
  return inst;
}

MarketInstance build_srf_violation(const SrfViolationSpec& spec) {
  const int H = static_cast<int>(spec.capacities.size());
  if (H < 3) throw ConstructionError("srf_violation needs at least three hospitals");
  for (int k : spec.capacities)
    if (k < 2) throw ConstructionError("srf_violation: capacities must be at least 2");
  int h1 = spec.h1, h2 = spec.h2, h3 = spec.h3;
  if (h1 == h2 || h1 == h3 || h2 == h3 || h1 < 0 || h2 < 0 || h3 < 0 || h1 >= H ||
      h2 >= H || h3 >= H)
    throw ConstructionError("srf_violation: h1, h2, h3 must be distinct hospitals");

  Ranking pf = hospital_list_completed(spec.pf, H);
  Ranking pm = hospital_list_completed(spec.pm, H);
  if (static_cast<int>(spec.couple_pairs.size()) != H * H)
    throw ConstructionError("srf_violation: list every fully matched pair once");
  Ranking cp = couple_list(spec.couple_pairs, pf, pm, H);

  if (!check_rvt(cp, pf, pm, H).holds)
    throw ConstructionError("srf_violation: the couple preference must stay within "
                            "the togetherness restriction");
  // The violation shape at (h1, h2, h3).
  if (pf.top() != h1)
    throw ConstructionError("srf_violation: h1 must be f's top hospital");
  if (!(cp.prefers(pair_code(h3, h3, H), pair_code(h3, h2, H)) &&
        pm.prefers(h2, h3) && pf.prefers(h3, h2)))
    throw ConstructionError(
        "srf_violation: need (h3,h3) above (h3,h2) with m preferring h2 and f "
        "preferring h3");

  int total = 0;
  for (int k : spec.capacities) total += k;
  int n_fillers = total - 6;

  MarketInstance inst;
  for (int h = 0; h < H; ++h)
    inst.hospitals.push_back({"h" + std::to_string(h + 1), spec.capacities[h]});
  for (int i = 0; i < n_fillers; ++i)
    inst.doctors.push_back(spec.filler_prefix + std::to_string(i + 1));
  int base = n_fillers;
  for (const char* id : {"d1", "d2", "d3", "d4", "f", "m"})
    inst.doctors.push_back(id);
  int pd1 = base, pd2 = base + 1, pd3 = base + 2, pd4 = base + 3;
  int f = base + 4, m = base + 5;
  for (int d = 0; d < inst.doctor_count(); ++d)
    if (d != f && d != m) inst.singles.push_back(d);
  inst.couples = {{f, m}};

  inst.doctor_prefs.resize(inst.doctor_count());
  // Pattern singles reproduce the three-hospital example columns.
  inst.doctor_prefs[pd1] = hospital_list_completed({h2, h1, h3}, H);
  inst.doctor_prefs[pd2] = hospital_list_completed({h3, h1, h2}, H);
  inst.doctor_prefs[pd3] = hospital_list_completed({h1, h2, h3}, H);
  inst.doctor_prefs[pd4] = hospital_list_completed({h2, h1, h3}, H);
  inst.doctor_prefs[f] = pf;
  inst.doctor_prefs[m] = pm;
  inst.couple_prefs = {cp};

  // Fillers top their home hospital; the pattern hospitals keep two seats.
  std::vector<int> quota(H);
  for (int h = 0; h < H; ++h)
    quota[h] = spec.capacities[h] - (h == h1 || h == h2 || h == h3 ? 2 : 0);
  int bucket = 0;
  for (int i = 0; i < n_fillers; ++i) {
    while (quota[bucket] == 0) ++bucket;
    --quota[bucket];
    inst.doctor_prefs[i] = hospital_list_completed({bucket}, H);
  }

  // Hospital rankings: all fillers first, then the pattern block.
  auto pattern_ranking = [&](std::vector<int> block) {
    std::vector<int> order;
    for (int i = 0; i < n_fillers; ++i) order.push_back(i);
    order.insert(order.end(), block.begin(), block.end());
    return doctor_list(std::move(order), inst.doctor_count());
  };
  for (int h = 0; h < H; ++h) {
    Ranking individual =
        h == h1   ? pattern_ranking({pd3, pd4, pd1, f, m, pd2})
        : h == h2 ? pattern_ranking({pd4, pd3, f, m, pd1, pd2})
        : h == h3 ? pattern_ranking({pd3, pd4, f, m, pd1, pd2})
                  : pattern_ranking({pd1, pd2, pd3, pd4, f, m});
    inst.hospital_prefs.push_back({individual, SetExtension::RankLex, {}});
  }

  check_built(inst, "srf_violation");
  if (!check_rf(inst).holds)
    throw std::logic_error("srf_violation broke the rf property");
  if (check_srf(inst).holds)
    throw std::logic_error("srf_violation built an srf-satisfying instance");
  if (!check_cpc(inst).holds)
    throw std::logic_error("srf_violation broke the cpc property");
  return inst;
}

namespace {

// All fully matched pairs: the given head first, then the canonical
// responsive order over the rest.
std::vector<std::pair<int, int>> matched_pairs_with_head(
    std::vector<std::pair<int, int>> head, const std::vector<int>& pf_prefix,
    const std::vector<int>& pm_prefix, int n_hospitals) {
  Ranking pf = hospital_list_completed(pf_prefix, n_hospitals);
  Ranking pm = hospital_list_completed(pm_prefix, n_hospitals);
  Ranking canon = responsive_couple_order(pf, pm, n_hospitals);
  std::vector<std::pair<int, int>> out = head;
  for (int p = 0; p < canon.size(); ++p) {
    auto [a, b] = pair_decode(canon.at(p), n_hospitals);
    if (a == n_hospitals || b == n_hospitals) continue;
    if (std::find(out.begin(), out.end(), std::pair(a, b)) == out.end())
      out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

RfViolationSpec default_rf_violation_spec(std::vector<int> capacities, int h1, int h2) {
  int H = static_cast<int>(capacities.size());
  RfViolationSpec spec;
  spec.capacities = std::move(capacities);
  spec.h1 = h1;
  spec.h2 = h2;
  spec.pf = {h2, h1};
  spec.pm = {h1, h2};
  spec.couple_pairs = matched_pairs_with_head(
      {{h1, h1}, {h2, h1}, {h2, h2}, {h1, h2}}, spec.pf, spec.pm, H);
  return spec;
}

ScpiViolationSpec default_scpi_violation_spec(std::vector<int> capacities, int case_tag) {
  ScpiViolationSpec spec;
  int total = 0;
  for (int k : capacities) total += k;
  spec.capacities = std::move(capacities);
  for (int i = 0; i < total - 4; ++i) {
    spec.ranking.push_back("s" + std::to_string(i + 1));
    spec.singles.push_back(spec.ranking.back());
  }
  if (case_tag == 1) {
    for (const char* id : {"f", "b1", "m", "b2"}) spec.ranking.push_back(id);
  } else {
    for (const char* id : {"f", "b1", "b2", "m"}) spec.ranking.push_back(id);
  }
  spec.singles.push_back("b1");
  spec.singles.push_back("b2");
  spec.couples = {{"f", "m"}};
  return spec;
}

SrfViolationSpec default_srf_violation_spec(std::vector<int> capacities, int h1, int h2,
                                            int h3) {
  int H = static_cast<int>(capacities.size());
  SrfViolationSpec spec;
  spec.capacities = std::move(capacities);
  spec.h1 = h1;
  spec.h2 = h2;
  spec.h3 = h3;
  spec.pf = {h1, h3, h2};
  spec.pm = {h2, h1, h3};
  spec.couple_pairs = matched_pairs_with_head(
      {{h1, h2}, {h1, h1}, {h1, h3}, {h3, h3}, {h3, h2}, {h3, h1},
       {h2, h2}, {h2, h1}, {h2, h3}},
      spec.pf, spec.pm, H);
  return spec;
}

}  // namespace stablecouples
