#pragma once
// Seeded random instance generators for the property and acceptance suites.
// Every generator asserts the axiom profile it promises, so a generator bug
// fails loudly instead of weakening a property test.

#include <random>
#include <vector>

#include "stablecouples/market.hpp"

namespace stablecouples::testgen {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<unsigned long long>(n)); }
  bool coin() { return eng() & 1; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[below(i + 1)]);
  }
};

Ranking make_hospital_list(std::vector<int> order, int n_hospitals);
Ranking make_doctor_list(std::vector<int> order, int n_doctors);

/// Uniform-ish random responsive couple preference: a random linear extension
/// of the coordinate-wise partial order, fully matched pairs first.
Ranking random_responsive_pref(Rng& rng, const Ranking& pf, const Ranking& pm,
                               int n_hospitals);

/// Random togetherness preference: a responsive base with same-hospital pairs
/// lifted upward.  Optional ceilings keep the lifts inside the rf and srf
/// conditions.
Ranking random_rvt_pref(Rng& rng, const Ranking& pf, const Ranking& pm, int n_hospitals,
                        bool rf_ceiling, bool srf_ceiling);

/// Any strict order with matched pairs first.
Ranking random_unrestricted_pref(Rng& rng, int n_hospitals);

// Acceptance-criterion generators.  Sizes stay within |H| <= 3, |D| <= 6
// unless stated.
MarketInstance random_cpi_rvt_rf(Rng& rng);                     // alg1 guard
MarketInstance random_scpi_market(Rng& rng, bool force_case2);  // alg2 guard
MarketInstance random_cpc_srf_market(Rng& rng);                 // alg3 guard
MarketInstance random_scpc_market(Rng& rng);                    // alg4 guard
MarketInstance random_couple_free_cpi(Rng& rng, int max_doctors);  // sda = dpda
/// Mixed-flavor instance for the implication-lattice test; couple labels are
/// normalized whenever hospitals share a ranking.
MarketInstance random_mixed_market(Rng& rng);

}  // namespace stablecouples::testgen
