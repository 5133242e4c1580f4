#pragma once
// Builders for the three worked example markets and for the three
// counterexample families whose brute-forced stable set is empty.  Builders
// refuse (ConstructionError) when the requested shape cannot realize the
// family's conditions instead of improvising.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stablecouples/market.hpp"

namespace stablecouples {

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MarketInstance example1();
MarketInstance example2();
MarketInstance example3();

/// Canonical responsive completion of a couple preference from the members'
/// individual rankings: fully matched pairs first, then pairs with an
/// unmatched coordinate, each group ordered lexicographically by the
/// f-coordinate rank then the m-coordinate rank.
Ranking responsive_couple_order(const Ranking& pf, const Ranking& pm, int n_hospitals);

// A two-hospital togetherness market in which the couple's compromise falls
// on the f-member.  Fillers saturate every seat not reserved for the couple
// and the two designated singles.
struct RfViolationSpec {
  std::vector<int> capacities;  // hospitals are named h1..hn in this order
  int h1 = 0, h2 = 1;           // the violation hospitals (indices)
  std::vector<int> pf, pm;      // couple members' rankings, hospital indices
  // Fully matched pairs, best first; unmatched pairs are appended
  // canonically.
  std::vector<std::pair<int, int>> couple_pairs;
  std::string filler_prefix = "filler";
};

/// Requires: the couple preference satisfies the togetherness restriction,
/// and (h1,h1) is ranked above (h2,h1) while the f-member prefers h2 to h1.
MarketInstance build_rf_violation(const RfViolationSpec& spec);

// A common-ranking market whose couple sits too far apart for the capacity
// profile; the builder crosses the top choices of f, m and two designated
// doctors over the two violation hospitals.
struct ScpiViolationSpec {
  std::vector<int> capacities;
  std::vector<std::string> ranking;  // common ranking, best first
  std::vector<std::string> singles;
  std::vector<std::pair<std::string, std::string>> couples;
  int h1 = -1, h2 = -1;  // chosen automatically when negative
};

/// Requires: the ranking violates the couple-closeness condition for some
/// couple under the given capacities, and capacities sum to the doctor count.
MarketInstance build_scpi_violation(const ScpiViolationSpec& spec);

// Embeds the three-hospital pattern market around a couple whose
// togetherness compromise at a non-top hospital of f goes against a hospital
// f likes less.
struct SrfViolationSpec {
  std::vector<int> capacities;  // at least three hospitals
  int h1 = 0, h2 = 1, h3 = 2;
  std::vector<int> pf, pm;
  std::vector<std::pair<int, int>> couple_pairs;
  std::string filler_prefix = "filler";
};

/// Requires: rf holds, and at (h1,h2,h3): h1 is f's top hospital, the couple
/// ranks (h3,h3) above (h3,h2), m prefers h2 to h3, f prefers h3 to h2.
MarketInstance build_srf_violation(const SrfViolationSpec& spec);

// Default shapes used by the CLI generate subcommand.
RfViolationSpec default_rf_violation_spec(std::vector<int> capacities, int h1 = 0,
                                          int h2 = 1);
ScpiViolationSpec default_scpi_violation_spec(std::vector<int> capacities,
                                              int case_tag = 2);
SrfViolationSpec default_srf_violation_spec(std::vector<int> capacities, int h1 = 0,
                                            int h2 = 1, int h3 = 2);

}  // namespace stablecouples
