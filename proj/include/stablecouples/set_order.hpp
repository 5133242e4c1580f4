#pragma once
// Comparisons between feasible sets of doctors at a hospital.
//
// Responsiveness only partially orders feasible sets.  The comparisons that
// hold in every responsive completion of the individual ranking ("forced")
// are exactly dominance between the capacity-padded sorted rank vectors,
// where missing seats count as vacancies ranked below every doctor.  The
// rank-vector-lexicographic order is the canonical total completion; explicit
// orders are user-supplied total completions.

#include <vector>

#include "stablecouples/market.hpp"

namespace stablecouples {

enum class PartialOrder { Better, Worse, Equal, Incomparable };

/// Ranks of the set members under the hospital's individual ranking, sorted
/// ascending (best first) and padded to the hospital's capacity with the
/// vacancy rank.  The set must fit the capacity.
std::vector<int> padded_rank_vector(const MarketInstance& inst, int hospital,
                                    const std::vector<int>& doctor_set);

/// Comparison of a vs b in the forced (every-responsive-completion) order.
PartialOrder forced_compare(const MarketInstance& inst, int hospital,
                            const std::vector<int>& a, const std::vector<int>& b);

/// <0 when a is preferred under the rank-vector-lexicographic completion.
int rank_lex_compare(const MarketInstance& inst, int hospital,
                     const std::vector<int>& a, const std::vector<int>& b);

/// <0 when a is preferred under the hospital's explicit order.  Throws when
/// the hospital carries no explicit order or a set is missing from it.
int explicit_compare(const MarketInstance& inst, int hospital,
                     const std::vector<int>& a, const std::vector<int>& b);

/// Position of a set in an explicit order; -1 when absent.  Sets compare as
/// sorted vectors.
int explicit_position(const HospitalPref& pref, std::vector<int> set);

/// All subsets of 0..n_doctors-1 with size <= capacity, each sorted
/// ascending, enumerated by ascending bitmask.
std::vector<std::vector<int>> feasible_sets(int n_doctors, int capacity);

/// The rank-vector-lexicographic order materialized as an explicit list,
/// best first.
std::vector<std::vector<int>> rank_lex_order(const MarketInstance& inst, int hospital);

}  // namespace stablecouples
