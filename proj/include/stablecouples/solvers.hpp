#pragma once
// The four constructive algorithms, each guarded by its axiom preconditions.
// A solver refuses to run when a precondition fails and always attaches the
// verdicts it computed, so callers can explain refusals.  Accepted runs end
// with a stability-oracle pass over the output, recorded in the report.

#include <optional>
#include <string>
#include <vector>

#include "stablecouples/axioms.hpp"
#include "stablecouples/engine.hpp"
#include "stablecouples/stability.hpp"

namespace stablecouples {

struct SolverReport {
  std::string algorithm;
  bool refused = false;
  std::string refusal_reason;
  std::vector<AxiomVerdict> preconditions;
  std::optional<Matching> matching;
  EngineTrace trace;
  std::optional<StabilityVerdict> stability;
  std::vector<std::string> notes;
};

/// Serial dictatorship in the common-ranking order under CPI plus the couple
/// conditions of the togetherness model; requires CPI, RVT, and RF.
SolverReport solve_alg1(const MarketInstance& inst);

/// Interleaved serial dictatorship with jointly proposing couples; requires
/// CPI and SCPI, couple preferences otherwise unrestricted.
SolverReport solve_alg2(const MarketInstance& inst);

/// One deferred-acceptance run with couple m-members proposing along the
/// conditional preference anchored at the f-member's tentative hospital;
/// requires CPC, RVT, RF, and SRF.
SolverReport solve_alg3(const MarketInstance& inst);

/// Blockwise deferred acceptance over the hospital-independent doctor blocks
/// between consecutive couple f-members; requires CPC, SCPC, RVT, and RF.
SolverReport solve_alg4(const MarketInstance& inst);

/// Plain engines behind the same report surface, for the CLI.
SolverReport solve_dpda(const MarketInstance& inst);
SolverReport solve_sda(const MarketInstance& inst);

SolverReport run_solver(const MarketInstance& inst, const std::string& algorithm);

}  // namespace stablecouples
