#pragma once
// Instance and matching files, plus the JSON report forms used by the CLI.
//
// Instance schema (UTF-8 JSON):
//   hospitals      array of {id, capacity}
//   singles        array of doctor ids
//   couples        array of {f, m}
//   doctor_prefs   map id -> array of hospital ids, "@none" implicit last
//   couple_prefs   map couple index -> array of [h_f, h_m]; "@none" allowed;
//                  pairs with a "@none" coordinate may be omitted and are
//                  appended in the canonical order
//   hospital_prefs map id -> {individual: array of doctor ids,
//                             set_extension: "forced" | "rank_lex" |
//                                            {explicit: array of arrays}}
// Canonical serialization: keys sorted, arrays in preference order,
// two-space indentation, every couple-preference pair explicit.

#include <string>

#include <json.hpp>

#include "stablecouples/axioms.hpp"
#include "stablecouples/market.hpp"
#include "stablecouples/solvers.hpp"
#include "stablecouples/stability.hpp"

namespace stablecouples {

struct ParseError : std::runtime_error {
  std::string path;  // path to the offending field
  ParseError(std::string path_, const std::string& what)
      : std::runtime_error(path_.empty() ? what : path_ + ": " + what),
        path(std::move(path_)) {}
};

MarketInstance parse_instance(const std::string& text);
MarketInstance load_instance(const std::string& file);
std::string serialize_instance(const MarketInstance& inst);

Matching parse_matching(const std::string& text, const MarketInstance& inst);
Matching load_matching(const std::string& file, const MarketInstance& inst);
std::string serialize_matching(const MarketInstance& inst, const Matching& mu);

nlohmann::ordered_json matching_to_json(const MarketInstance& inst, const Matching& mu);
nlohmann::ordered_json validation_to_json(const ValidationReport& report);
nlohmann::ordered_json verdict_to_json(const MarketInstance& inst,
                                       const AxiomVerdict& verdict);
nlohmann::ordered_json witness_to_json(const MarketInstance& inst,
                                       const BlockingWitness& witness);
nlohmann::ordered_json stability_to_json(const MarketInstance& inst,
                                         const StabilityVerdict& verdict);
nlohmann::ordered_json solver_report_to_json(const MarketInstance& inst,
                                             const SolverReport& report,
                                             bool include_stability);

}  // namespace stablecouples
