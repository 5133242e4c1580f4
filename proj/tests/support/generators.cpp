#include "support/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "stablecouples/axioms.hpp"

namespace stablecouples::testgen {

namespace {

std::vector<int> random_perm(Rng& rng, int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(v);
  return v;
}

bool dominates(int q, int p, const Ranking& pf, const Ranking& pm, int n) {
  auto [qa, qb] = pair_decode(q, n);
  auto [pa, pb] = pair_decode(p, n);
  if (qa == pa && qb == pb) return false;
  return pf.position_of(qa) <= pf.position_of(pa) &&
         pm.position_of(qb) <= pm.position_of(pb);
}

// Random linear extension of the coordinate-wise order over `codes`.
std::vector<int> random_extension(Rng& rng, std::vector<int> codes, const Ranking& pf,
                                  const Ranking& pm, int n) {
  std::vector<int> out;
  while (!codes.empty()) {
    std::vector<int> ready;
    for (int p : codes) {
      bool blocked = false;
      for (int q : codes)
        if (q != p && dominates(q, p, pf, pm, n)) blocked = true;
      if (!blocked) ready.push_back(p);
    }
    int pick = ready[rng.below(static_cast<int>(ready.size()))];
    out.push_back(pick);
    codes.erase(std::find(codes.begin(), codes.end(), pick));
  }
  return out;
}

void assert_holds(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("generator broke its promise: ") + what);
}

}  // namespace

Ranking make_hospital_list(std::vector<int> order, int n_hospitals) {
  order.push_back(n_hospitals);
  return Ranking(std::move(order), n_hospitals + 1);
}

Ranking make_doctor_list(std::vector<int> order, int n_doctors) {
  order.push_back(n_doctors);
  return Ranking(std::move(order), n_doctors + 1);
}

Ranking random_responsive_pref(Rng& rng, const Ranking& pf, const Ranking& pm,
                               int n_hospitals) {
  std::vector<int> matched, with_none;
  for (int a = 0; a <= n_hospitals; ++a)
    for (int b = 0; b <= n_hospitals; ++b)
      (a == n_hospitals || b == n_hospitals ? with_none : matched)
          .push_back(pair_code(a, b, n_hospitals));
  std::vector<int> order = random_extension(rng, matched, pf, pm, n_hospitals);
  for (int code : random_extension(rng, with_none, pf, pm, n_hospitals))
    order.push_back(code);
  return Ranking(std::move(order), (n_hospitals + 1) * (n_hospitals + 1));
}

Ranking random_rvt_pref(Rng& rng, const Ranking& pf, const Ranking& pm, int n_hospitals,
                        bool rf_ceiling, bool srf_ceiling) {
  Ranking base = random_responsive_pref(rng, pf, pm, n_hospitals);
  std::vector<int> order(base.order());
  const int n = n_hospitals;

  auto blocks_lift = [&](int diag_h, int code) {
    auto [a, b] = pair_decode(code, n);
    if (rf_ceiling && b == diag_h && a != diag_h && pf.prefers(a, diag_h)) return true;
    if (srf_ceiling && diag_h != pf.top() && a == diag_h && b != diag_h &&
        pm.prefers(b, diag_h) && pf.prefers(diag_h, b))
      return true;
    return false;
  };

  int stop = 0;  // lifted diagonals keep their relative order
  for (int h = 0; h < n; ++h) {
    // diagonals processed from the best downward
    int best_h = -1, best_pos = static_cast<int>(order.size());
    for (int g = 0; g < n; ++g) {
      auto it = std::find(order.begin(), order.end(), pair_code(g, g, n));
      int pos = static_cast<int>(it - order.begin());
      if (pos >= stop && pos < best_pos) {
        bool processed = false;
        for (int seen = 0; seen < stop; ++seen)
          if (order[seen] == pair_code(g, g, n)) processed = true;
        if (!processed) {
          best_pos = pos;
          best_h = g;
        }
      }
    }
    if (best_h < 0) break;
    int floor = stop;
    for (int j = best_pos - 1; j >= stop; --j)
      if (blocks_lift(best_h, order[j])) {
        floor = j + 1;
        break;
      }
    int target = floor + rng.below(best_pos - floor + 1);
    int code = order[best_pos];
    order.erase(order.begin() + best_pos);
    order.insert(order.begin() + target, code);
    stop = target + 1;
  }
  Ranking out(std::move(order), (n + 1) * (n + 1));
  assert_holds(check_rvt(out, pf, pm, n).holds, "rvt");
  return out;
}

Ranking random_unrestricted_pref(Rng& rng, int n_hospitals) {
  std::vector<int> matched, with_none;
  for (int a = 0; a <= n_hospitals; ++a)
    for (int b = 0; b <= n_hospitals; ++b)
      (a == n_hospitals || b == n_hospitals ? with_none : matched)
          .push_back(pair_code(a, b, n_hospitals));
  rng.shuffle(matched);
  rng.shuffle(with_none);
  matched.insert(matched.end(), with_none.begin(), with_none.end());
  return Ranking(std::move(matched), (n_hospitals + 1) * (n_hospitals + 1));
}

namespace {

std::vector<int> random_capacities(Rng& rng, int& n_hospitals) {
  // kappa >= 2 everywhere and the seats match the doctors.
  static const std::vector<std::vector<int>> presets = {
      {2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}, {4, 2}, {2, 2, 2}};
  std::vector<int> caps = presets[rng.below(static_cast<int>(presets.size()))];
  n_hospitals = static_cast<int>(caps.size());
  return caps;
}

struct Skeleton {
  MarketInstance inst;
  std::vector<int> common_order;  // doctor indices, best first
};

// Market shell with a common doctor order; couples occupy the given
// positions in that order (f above m), everybody else is single.
Skeleton skeleton_with_couples(Rng& rng, const std::vector<int>& capacities,
                               const std::vector<std::pair<int, int>>& couple_positions) {
  Skeleton sk;
  MarketInstance& inst = sk.inst;
  int D = 0;
  for (int k : capacities) D += k;
  for (size_t h = 0; h < capacities.size(); ++h)
    inst.hospitals.push_back({"h" + std::to_string(h + 1), capacities[h]});
  for (int d = 0; d < D; ++d) inst.doctors.push_back("d" + std::to_string(d + 1));
  sk.common_order = random_perm(rng, D);

  std::vector<bool> taken(D, false);
  for (auto [pf_pos, pm_pos] : couple_positions) {
    Couple c{sk.common_order[pf_pos], sk.common_order[pm_pos]};
    inst.couples.push_back(c);
    taken[c.f] = taken[c.m] = true;
  }
  for (int d = 0; d < D; ++d)
    if (!taken[d]) inst.singles.push_back(d);

  int H = inst.hospital_count();
  inst.doctor_prefs.resize(D);
  for (int d = 0; d < D; ++d)
    inst.doctor_prefs[d] = make_hospital_list(random_perm(rng, H), H);
  return sk;
}

void common_hospitals(MarketInstance& inst, const std::vector<int>& common_order) {
  Ranking individual = make_doctor_list(common_order, inst.doctor_count());
  inst.hospital_prefs.assign(inst.hospital_count(),
                             {individual, SetExtension::RankLex, {}});
}

std::vector<std::pair<int, int>> random_couple_positions(Rng& rng, int D, int max_couples) {
  int k = 1 + (max_couples > 1 ? rng.below(max_couples) : 0);
  std::vector<int> pos(D);
  std::iota(pos.begin(), pos.end(), 0);
  rng.shuffle(pos);
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < k; ++i) {
    int a = pos[2 * i], b = pos[2 * i + 1];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

}  // namespace

MarketInstance random_cpi_rvt_rf(Rng& rng) {
  int H = 0;
  std::vector<int> caps = random_capacities(rng, H);
  int D = 0;
  for (int k : caps) D += k;
  Skeleton sk = skeleton_with_couples(rng, caps, random_couple_positions(rng, D, 2));
  MarketInstance& inst = sk.inst;
  common_hospitals(inst, sk.common_order);
  for (int c = 0; c < inst.couple_count(); ++c)
    inst.couple_prefs.push_back(random_rvt_pref(rng, inst.doctor_prefs[inst.couples[c].f],
                                                inst.doctor_prefs[inst.couples[c].m], H,
                                                /*rf=*/true, /*srf=*/false));
  assert_holds(check_cpi(inst).verdict.holds, "cpi");
  assert_holds(check_rf(inst).holds, "rf");
  return inst;
}

MarketInstance random_scpi_market(Rng& rng, bool force_case2) {
  int H = 0;
  std::vector<int> caps = random_capacities(rng, H);
  int D = 0;
  for (int k : caps) D += k;

  // Couples sit adjacent in the common order; with force_case2 the last
  // couple instead brackets a single doctor at the very bottom.
  std::vector<std::pair<int, int>> positions;
  if (force_case2) {
    positions.emplace_back(D - 3, D - 1);
    if (D >= 6 && rng.coin()) positions.emplace_back(0, 1);
  } else {
    int start = rng.below(D - 1);
    positions.emplace_back(start, start + 1);
    if (D >= 6 && rng.coin()) {
      int other = start >= 3 ? 0 : D - 2;
      positions.emplace_back(other, other + 1);
    }
  }
  Skeleton sk = skeleton_with_couples(rng, caps, positions);
  MarketInstance& inst = sk.inst;
  common_hospitals(inst, sk.common_order);
  for (int c = 0; c < inst.couple_count(); ++c)
    inst.couple_prefs.push_back(random_unrestricted_pref(rng, H));
  assert_holds(check_cpi(inst).verdict.holds, "cpi");
  assert_holds(check_scpi(inst).holds, "scpi");
  return inst;
}

MarketInstance random_cpc_srf_market(Rng& rng) {
  int H = 0;
  std::vector<int> caps = random_capacities(rng, H);
  int D = 0;
  for (int k : caps) D += k;
  Skeleton sk = skeleton_with_couples(rng, caps, random_couple_positions(rng, D, 2));
  MarketInstance& inst = sk.inst;

  // Independent hospital rankings with f kept above m inside every couple.
  inst.hospital_prefs.clear();
  for (int h = 0; h < H; ++h) {
    std::vector<int> order = random_perm(rng, D);
    for (const Couple& c : inst.couples) {
      auto fi = std::find(order.begin(), order.end(), c.f);
      auto mi = std::find(order.begin(), order.end(), c.m);
      if (fi > mi) std::iter_swap(fi, mi);
    }
    inst.hospital_prefs.push_back(
        {make_doctor_list(std::move(order), D), SetExtension::RankLex, {}});
  }
  for (int c = 0; c < inst.couple_count(); ++c)
    inst.couple_prefs.push_back(random_rvt_pref(rng, inst.doctor_prefs[inst.couples[c].f],
                                                inst.doctor_prefs[inst.couples[c].m], H,
                                                /*rf=*/true, /*srf=*/true));
  assert_holds(check_cpc(inst).holds, "cpc");
  assert_holds(check_rf(inst).holds, "rf");
  assert_holds(check_srf(inst).holds, "srf");
  return inst;
}

MarketInstance random_scpc_market(Rng& rng) {
  int H = 0;
  std::vector<int> caps = random_capacities(rng, H);
  int D = 0;
  for (int k : caps) D += k;
  Skeleton sk = skeleton_with_couples(rng, caps, random_couple_positions(rng, D, 2));
  MarketInstance& inst = sk.inst;
  int k = inst.couple_count();

  // Hospital-independent blocks: block i ends with couple i's f-member; each
  // m lands in a strictly later block.  Hospitals shuffle within blocks.
  std::vector<int> block_of(inst.doctor_count(), -1);
  for (int c = 0; c < k; ++c) block_of[inst.couples[c].f] = c;
  for (int c = 0; c < k; ++c)
    block_of[inst.couples[c].m] = c + 1 + rng.below(k - c);
  for (int s : inst.singles) block_of[s] = rng.below(k + 1);

  inst.hospital_prefs.clear();
  for (int h = 0; h < H; ++h) {
    std::vector<int> order;
    for (int b = 0; b <= k; ++b) {
      std::vector<int> members;
      for (int d = 0; d < inst.doctor_count(); ++d)
        if (block_of[d] == b && (b >= k || d != inst.couples[b].f)) members.push_back(d);
      rng.shuffle(members);
      order.insert(order.end(), members.begin(), members.end());
      if (b < k) order.push_back(inst.couples[b].f);
    }
    inst.hospital_prefs.push_back(
        {make_doctor_list(std::move(order), inst.doctor_count()), SetExtension::RankLex, {}});
  }
  for (int c = 0; c < k; ++c)
    inst.couple_prefs.push_back(random_rvt_pref(rng, inst.doctor_prefs[inst.couples[c].f],
                                                inst.doctor_prefs[inst.couples[c].m], H,
                                                /*rf=*/true, /*srf=*/false));
  assert_holds(check_cpc(inst).holds, "cpc");
  assert_holds(check_scpc(inst).holds, "scpc");
  assert_holds(check_rf(inst).holds, "rf");
  return inst;
}

MarketInstance random_couple_free_cpi(Rng& rng, int max_doctors) {
  MarketInstance inst;
  int H = 2 + rng.below(2);
  int D = 4 + rng.below(std::max(1, max_doctors - 3));
  for (int h = 0; h < H; ++h)
    inst.hospitals.push_back({"h" + std::to_string(h + 1), 2 + rng.below(2)});
  for (int d = 0; d < D; ++d) {
    inst.doctors.push_back("d" + std::to_string(d + 1));
    inst.singles.push_back(d);
  }
  inst.doctor_prefs.resize(D);
  for (int d = 0; d < D; ++d)
    inst.doctor_prefs[d] = make_hospital_list(random_perm(rng, H), H);
  common_hospitals(inst, random_perm(rng, D));
  return inst;
}

MarketInstance random_mixed_market(Rng& rng) {
  switch (rng.below(5)) {
    case 0: {
      MarketInstance inst = random_cpi_rvt_rf(rng);
      // swap some couple preferences for responsive or unrestricted ones
      for (int c = 0; c < inst.couple_count(); ++c)
        if (rng.coin())
          inst.couple_prefs[c] =
              rng.coin() ? random_responsive_pref(rng, inst.doctor_prefs[inst.couples[c].f],
                                                  inst.doctor_prefs[inst.couples[c].m],
                                                  inst.hospital_count())
                         : random_unrestricted_pref(rng, inst.hospital_count());
      return inst;
    }
    case 1: return random_scpi_market(rng, rng.coin());
    case 2: return random_cpc_srf_market(rng);
    case 3: return random_scpc_market(rng);
    default: {
      MarketInstance inst = random_cpc_srf_market(rng);
      for (int c = 0; c < inst.couple_count(); ++c)
        if (rng.coin())
          inst.couple_prefs[c] = random_rvt_pref(
              rng, inst.doctor_prefs[inst.couples[c].f],
              inst.doctor_prefs[inst.couples[c].m], inst.hospital_count(),
              /*rf=*/rng.coin(), /*srf=*/false);
      return inst;
    }
  }
}

}  // namespace stablecouples::testgen
