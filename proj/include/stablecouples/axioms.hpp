#pragma once
// Decision procedures for the preference axioms.  Every failing verdict
// carries a witness that re-demonstrates the violation when replayed against
// the instance; witnesses are the first hit in a documented canonical scan
// order, so fixtures stay deterministic.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stablecouples/market.hpp"

namespace stablecouples {

enum class Axiom { Responsive, Cpi, CoupleResponsive, Rvt, Rf, Srf, Scpi, Cpc, Scpc };

std::string axiom_name(Axiom a);

// Clause (i) or (ii) of the hospital responsiveness definition; for clause
// (i) `base` is empty and a/b are the two singleton-or-empty sets compared.
struct ResponsiveWitness {
  int hospital = -1;
  int clause = 2;
  std::vector<int> base, a, b;
};
// First position where two hospitals' rankings disagree, as the inverted
// doctor pair.
struct CpiWitness {
  int hospital_a = -1, hospital_b = -1;
  int doctor_a = -1, doctor_b = -1;
};
// Two encoded allocation pairs ordered against the member projections.
struct CoupleOrderWitness {
  int couple = -1;
  int preferred_pair = -1, other_pair = -1;
};
// A pair sitting above an allocation that responsiveness forces over it.
struct RvtWitness {
  int couple = -1;
  int lifted_pair = -1, dominating_pair = -1;
};
struct RfWitness {
  int couple = -1, h = -1, h_prime = -1;
};
struct SrfWitness {
  int couple = -1, h = -1, h_prime = -1;
};
struct ScpiWitness {
  int couple = -1;
  int clause = 0;  // 1: m not ranked last, 2: m ranked last
  int doctors_between = 0;
  int doctors_above_m = 0;
};
struct CpcWitness {
  int hospital = -1, couple = -1;
};
struct ScpcWitness {
  int doctor = -1, couple = -1;
  int hospital_above = -1, hospital_below = -1;
};

using AxiomWitness =
    std::variant<ResponsiveWitness, CpiWitness, CoupleOrderWitness, RvtWitness,
                 RfWitness, SrfWitness, ScpiWitness, CpcWitness, ScpcWitness>;

struct AxiomVerdict {
  Axiom axiom;
  bool holds = true;
  std::optional<AxiomWitness> witness;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Clause (i): the order restricted to singletons and the empty set matches
/// the individual ranking.  Clause (ii): unions with a disjoint common part
/// compare like their differences.  `order` must list every feasible set
/// exactly once, best first.
AxiomVerdict check_responsive_order(const Ranking& individual, int capacity,
                                    const std::vector<std::vector<int>>& order,
                                    int n_doctors);

/// The instance-level wrapper for a hospital with an Explicit extension.
AxiomVerdict check_responsive_hospital(const MarketInstance& inst, int hospital);

struct CpiResult {
  AxiomVerdict verdict;
  // Present when CPI holds: the shared ranking, couples relabeled so the
  // better-ranked member is f, and the couple order sorted by m-rank.
  std::optional<Ranking> common;
  std::vector<Couple> normalized_couples;  // relabeled, original couple order
  std::vector<int> couple_order_by_m;      // couple indices, best m first
};

CpiResult check_cpi(const MarketInstance& inst);

/// Rewrites the instance so couple labels follow the CPI convention (f ranked
/// above m) and couples are listed by m-rank.  Requires CPI to hold.
MarketInstance normalize_for_cpi(const MarketInstance& inst);

AxiomVerdict check_couple_responsive(const Ranking& cp, const Ranking& pf,
                                     const Ranking& pm, int n_hospitals);

/// Operational test for responsiveness-violated-for-togetherness: the
/// preference may lift same-hospital pairs above allocations that dominate
/// them responsively, and nothing else.  Equivalent to the existential
/// definition (tested exhaustively against enumeration of responsive orders).
AxiomVerdict check_rvt(const Ranking& cp, const Ranking& pf, const Ranking& pm,
                       int n_hospitals);
/// All couples of the instance; witness names the first violating couple.
AxiomVerdict check_rvt_all(const MarketInstance& inst);
AxiomVerdict check_couple_responsive_all(const MarketInstance& inst);

AxiomVerdict check_rf(const MarketInstance& inst);
/// Requires check_rf to hold; throws PreconditionError otherwise.
AxiomVerdict check_srf(const MarketInstance& inst);
/// Requires check_cpi to hold; throws PreconditionError otherwise.
AxiomVerdict check_scpi(const MarketInstance& inst);
AxiomVerdict check_cpc(const MarketInstance& inst);
/// Requires check_cpc to hold; throws PreconditionError otherwise.
AxiomVerdict check_scpc(const MarketInstance& inst);

/// Re-evaluates the witnessed comparison; true when the violation reproduces.
bool replay_axiom_witness(const MarketInstance& inst, const AxiomVerdict& verdict);

}  // namespace stablecouples
