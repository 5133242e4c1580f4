#include "stablecouples/market.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace stablecouples {

Ranking::Ranking(std::vector<int> order, int universe)
    : order_(std::move(order)), pos_(universe, -1) {
  if (static_cast<int>(order_.size()) != universe)
    throw std::invalid_argument("ranking does not cover its universe");
  for (int p = 0; p < universe; ++p) {
    int x = order_[p];
    if (x < 0 || x >= universe)
      throw std::invalid_argument("ranking element out of range: " + std::to_string(x));
    if (pos_[x] != -1)
      throw std::invalid_argument("ranking repeats element: " + std::to_string(x));
    pos_[x] = p;
  }
}

int Ranking::position_of(int x) const {
  if (x < 0 || x >= universe() || pos_[x] < 0)
    throw std::out_of_range("element not in ranking: " + std::to_string(x));
  return pos_[x];
}

int rank(const Ranking& pref, int x) { return pref.rank_of(x); }

int MarketInstance::total_capacity() const {
  int sum = 0;
  for (const auto& h : hospitals) sum += h.capacity;
  return sum;
}

std::optional<int> MarketInstance::hospital_by_id(const std::string& id) const {
  for (int h = 0; h < hospital_count(); ++h)
    if (hospitals[h].id == id) return h;
  return std::nullopt;
}

std::optional<int> MarketInstance::doctor_by_id(const std::string& id) const {
  for (int d = 0; d < doctor_count(); ++d)
    if (doctors[d] == id) return d;
  return std::nullopt;
}

std::vector<int> MarketInstance::couple_lookup() const {
  std::vector<int> owner(doctor_count(), -1);
  for (int c = 0; c < couple_count(); ++c) {
    owner.at(couples[c].f) = c;
    owner.at(couples[c].m) = c;
  }
  return owner;
}

Ranking conditional_preference(const Ranking& couple_pref, int n_hospitals,
                               CoupleMember proposer, int partner_hospital) {
  if (partner_hospital < 0 || partner_hospital > n_hospitals)
    throw std::out_of_range("partner hospital not in the market: " +
                            std::to_string(partner_hospital));
  std::vector<int> order;
  order.reserve(n_hospitals + 1);
  for (int p = 0; p < couple_pref.size(); ++p) {
    auto [hf, hm] = pair_decode(couple_pref.at(p), n_hospitals);
    if (proposer == CoupleMember::M && hf == partner_hospital)
      order.push_back(hm);
    else if (proposer == CoupleMember::F && hm == partner_hospital)
      order.push_back(hf);
  }
  return Ranking(std::move(order), n_hospitals + 1);
}

void swap_couple_labels(MarketInstance& inst, int couple) {
  auto& c = inst.couples.at(couple);
  std::swap(c.f, c.m);
  const Ranking& cp = inst.couple_prefs.at(couple);
  int n = inst.hospital_count();
  std::vector<int> transposed;
  transposed.reserve(cp.size());
  for (int p = 0; p < cp.size(); ++p) {
    auto [hf, hm] = pair_decode(cp.at(p), n);
    transposed.push_back(pair_code(hm, hf, n));
  }
  inst.couple_prefs.at(couple) = Ranking(std::move(transposed), cp.universe());
}

std::vector<std::vector<int>> Matching::rosters(const MarketInstance& inst) const {
  std::vector<std::vector<int>> out(inst.hospital_count());
  for (int d = 0; d < inst.doctor_count(); ++d) {
    int h = seat.at(d);
    if (h != inst.none_hospital()) out.at(h).push_back(d);
  }
  return out;
}

Matching Matching::from_rosters(const MarketInstance& inst,
                                const std::vector<std::vector<int>>& rosters) {
  Matching mu(inst.doctor_count(), inst.none_hospital());
  for (int h = 0; h < static_cast<int>(rosters.size()); ++h)
    for (int d : rosters[h]) {
      if (mu.seat.at(d) != inst.none_hospital())
        throw std::invalid_argument("doctor seated at two hospitals: " + inst.doctors[d]);
      mu.seat.at(d) = h;
    }
  return mu;
}

bool Matching::respects_capacities(const MarketInstance& inst) const {
  std::vector<int> load(inst.hospital_count(), 0);
  for (int d = 0; d < inst.doctor_count(); ++d) {
    int h = seat.at(d);
    if (h == inst.none_hospital()) continue;
    if (++load[h] > inst.hospitals[h].capacity) return false;
  }
  return true;
}

bool Matching::everyone_matched(const MarketInstance& inst) const {
  for (int d = 0; d < inst.doctor_count(); ++d)
    if (seat.at(d) == inst.none_hospital()) return false;
  return true;
}

bool ValidationReport::has_fatal() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.fatal; });
}

void ValidationReport::add(std::string code, std::string message, bool fatal) {
  issues.push_back({std::move(code), std::move(message), fatal});
}

namespace {

bool is_permutation_ranking(const Ranking& r, int universe) {
  return r.universe() == universe && r.size() == universe;
}

}  // namespace

ValidationReport validate_instance(const MarketInstance& inst, ValidationMode mode) {
  ValidationReport rep;
  bool strict = mode == ValidationMode::Strict;
  int H = inst.hospital_count();
  int D = inst.doctor_count();
  int none_h = inst.none_hospital();

  // Identifier hygiene.
  {
    std::unordered_set<std::string> seen;
    for (const auto& h : inst.hospitals) {
      if (h.id == kNoneToken)
        rep.add("reserved_id", "hospital uses the reserved token " + h.id, true);
      if (!seen.insert(h.id).second)
        rep.add("duplicate_id", "duplicate hospital id " + h.id, true);
    }
    seen.clear();
    for (const auto& d : inst.doctors) {
      if (d == kNoneToken)
        rep.add("reserved_id", "doctor uses the reserved token " + d, true);
      if (!seen.insert(d).second)
        rep.add("duplicate_id", "duplicate doctor id " + d, true);
    }
  }

  // Cardinality assumptions.
  if (H < 2) rep.add("hospital_count", "at least two hospitals required", true);
  for (const auto& h : inst.hospitals)
    if (h.capacity < 2)
      rep.add("capacity_min", "hospital " + h.id + " has capacity < 2", true);
  if (D < 4) rep.add("doctor_count", "fewer than four doctors", strict);
  if (inst.couple_count() < 1) rep.add("couple_count", "no couples", strict);
  if (inst.total_capacity() != D)
    rep.add("capacity_sum",
            "total capacity " + std::to_string(inst.total_capacity()) +
                " differs from doctor count " + std::to_string(D),
            strict);

  // Partition of the doctor set.
  {
    std::vector<int> roles(D, 0);
    auto touch = [&](int d) {
      if (d < 0 || d >= D)
        rep.add("partition", "doctor index out of range: " + std::to_string(d), true);
      else
        ++roles[d];
    };
    for (int s : inst.singles) touch(s);
    for (const auto& c : inst.couples) {
      touch(c.f);
      touch(c.m);
    }
    for (int d = 0; d < D; ++d)
      if (roles[d] != 1)
        rep.add("partition",
                "doctor " + inst.doctors[d] + " appears in " +
                    std::to_string(roles[d]) + " roles",
                true);
  }

  // Ranking domains and none-last requirements.
  if (static_cast<int>(inst.doctor_prefs.size()) != D)
    rep.add("pref_domain", "doctor_prefs does not cover every doctor", true);
  else
    for (int d = 0; d < D; ++d) {
      const Ranking& p = inst.doctor_prefs[d];
      if (!is_permutation_ranking(p, H + 1)) {
        rep.add("pref_domain", "doctor " + inst.doctors[d] + " preference incomplete", true);
        continue;
      }
      if (p.at(p.size() - 1) != none_h)
        rep.add("doctor_pref_none_last",
                "doctor " + inst.doctors[d] + " must rank every hospital above " +
                    kNoneToken,
                true);
    }

  if (static_cast<int>(inst.couple_prefs.size()) != inst.couple_count())
    rep.add("pref_domain", "couple_prefs does not cover every couple", true);
  else
    for (int c = 0; c < inst.couple_count(); ++c) {
      const Ranking& p = inst.couple_prefs[c];
      if (!is_permutation_ranking(p, (H + 1) * (H + 1))) {
        rep.add("pref_domain", "couple " + std::to_string(c) + " preference incomplete",
                true);
        continue;
      }
      // Every fully matched pair precedes every pair with a none coordinate.
      int worst_matched = -1, best_none = p.size();
      for (int pos = 0; pos < p.size(); ++pos) {
        auto [hf, hm] = pair_decode(p.at(pos), H);
        if (hf == none_h || hm == none_h)
          best_none = std::min(best_none, pos);
        else
          worst_matched = std::max(worst_matched, pos);
      }
      if (worst_matched > best_none)
        rep.add("couple_pref_matched_first",
                "couple " + std::to_string(c) +
                    " ranks an unmatched outcome above a fully matched pair",
                true);
    }

  if (static_cast<int>(inst.hospital_prefs.size()) != H)
    rep.add("pref_domain", "hospital_prefs does not cover every hospital", true);
  else
    for (int h = 0; h < H; ++h) {
      const Ranking& p = inst.hospital_prefs[h].individual;
      if (!is_permutation_ranking(p, D + 1)) {
        rep.add("pref_domain", "hospital " + inst.hospitals[h].id + " ranking incomplete",
                true);
        continue;
      }
      if (p.at(p.size() - 1) != inst.none_doctor())
        rep.add("hospital_pref_none_last",
                "hospital " + inst.hospitals[h].id +
                    " must rank every doctor above a vacancy",
                true);
    }

  return rep;
}

std::vector<int> canonical_none_pairs(const Ranking& pf, const Ranking& pm,
                                      int n_hospitals) {
  int none = n_hospitals;
  std::vector<int> codes;
  for (int a = 0; a <= n_hospitals; ++a)
    for (int b = 0; b <= n_hospitals; ++b)
      if (a == none || b == none) codes.push_back(pair_code(a, b, n_hospitals));
  std::sort(codes.begin(), codes.end(), [&](int x, int y) {
    auto [xa, xb] = pair_decode(x, n_hospitals);
    auto [ya, yb] = pair_decode(y, n_hospitals);
    if (pf.position_of(xa) != pf.position_of(ya))
      return pf.position_of(xa) < pf.position_of(ya);
    return pm.position_of(xb) < pm.position_of(yb);
  });
  return codes;
}

}  // namespace stablecouples
