#include "stablecouples/set_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace stablecouples {

std::vector<int> padded_rank_vector(const MarketInstance& inst, int hospital,
                                    const std::vector<int>& doctor_set) {
  const HospitalPref& hp = inst.hospital_prefs.at(hospital);
  int capacity = inst.hospitals.at(hospital).capacity;
  if (static_cast<int>(doctor_set.size()) > capacity)
    throw std::invalid_argument("set exceeds hospital capacity");
  std::vector<int> ranks;
  ranks.reserve(capacity);
  for (int d : doctor_set) ranks.push_back(hp.individual.rank_of(d));
  std::sort(ranks.begin(), ranks.end());
  int vacancy_rank = hp.individual.rank_of(inst.none_doctor());
  ranks.resize(capacity, vacancy_rank);
  return ranks;
}

PartialOrder forced_compare(const MarketInstance& inst, int hospital,
                            const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> va = padded_rank_vector(inst, hospital, a);
  std::vector<int> vb = padded_rank_vector(inst, hospital, b);
  bool a_le = true, b_le = true, equal = true;
  for (size_t i = 0; i < va.size(); ++i) {
    if (va[i] > vb[i]) a_le = false;
    if (vb[i] > va[i]) b_le = false;
    if (va[i] != vb[i]) equal = false;
  }
  if (equal) return PartialOrder::Equal;
  if (a_le) return PartialOrder::Better;
  if (b_le) return PartialOrder::Worse;
  return PartialOrder::Incomparable;
}

int rank_lex_compare(const MarketInstance& inst, int hospital,
                     const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> va = padded_rank_vector(inst, hospital, a);
  std::vector<int> vb = padded_rank_vector(inst, hospital, b);
  if (va < vb) return -1;
  if (vb < va) return 1;
  return 0;
}

int explicit_position(const HospitalPref& pref, std::vector<int> set) {
  std::sort(set.begin(), set.end());
  for (int p = 0; p < static_cast<int>(pref.explicit_order.size()); ++p)
    if (pref.explicit_order[p] == set) return p;
  return -1;
}

int explicit_compare(const MarketInstance& inst, int hospital,
                     const std::vector<int>& a, const std::vector<int>& b) {
  const HospitalPref& hp = inst.hospital_prefs.at(hospital);
  if (hp.extension != SetExtension::Explicit || hp.explicit_order.empty())
    throw std::invalid_argument("hospital " + inst.hospitals.at(hospital).id +
                                " has no explicit set order");
  int pa = explicit_position(hp, a);
  int pb = explicit_position(hp, b);
  if (pa < 0 || pb < 0)
    throw std::invalid_argument("set missing from the explicit order of hospital " +
                                inst.hospitals.at(hospital).id);
  return pa - pb;
}

std::vector<std::vector<int>> feasible_sets(int n_doctors, int capacity) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n_doctors); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) > capacity) continue;
    std::vector<int> set;
    for (int d = 0; d < n_doctors; ++d)
      if (mask & (1u << d)) set.push_back(d);
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<std::vector<int>> rank_lex_order(const MarketInstance& inst, int hospital) {
  auto sets = feasible_sets(inst.doctor_count(), inst.hospitals.at(hospital).capacity);
  std::sort(sets.begin(), sets.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              int c = rank_lex_compare(inst, hospital, a, b);
              if (c != 0) return c < 0;
              return a < b;  // unreachable for distinct sets; keeps sort stable
            });
  return sets;
}

}  // namespace stablecouples
