// Command-line front end: validate / solve / check / enumerate / generate.
//
// Exit codes: 0 success, 1 domain negative (axiom fails, unstable matching,
// empty stable set when asked to find one, solver refusal), 2 input error,
// 3 resource guard tripped.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablecouples/constructions.hpp"
#include "stablecouples/json_io.hpp"
#include "stablecouples/set_order.hpp"

using namespace stablecouples;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kGuard = 3;

void emit(const ordered_json& doc, bool pretty) {
  if (pretty)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << doc.dump() << "\n";
}

long long max_candidates_default() {
  if (const char* env = std::getenv("STABLE_COUPLES_MAX_CANDIDATES"))
    return std::atoll(env);
  return 10'000'000;
}

Semantics parse_semantics(const std::string& name) {
  if (name == "forced") return Semantics::ForcedOnly;
  if (name == "rank_lex") return Semantics::RankVectorLex;
  if (name == "explicit") return Semantics::Explicit;
  throw ParseError("--semantics", "expected forced, rank_lex or explicit");
}

int cmd_validate(const std::string& file, const std::vector<std::string>& axioms,
                 bool permissive, bool pretty) {
  MarketInstance inst = load_instance(file);
  ValidationReport report = validate_instance(
      inst, permissive ? ValidationMode::Permissive : ValidationMode::Strict);
  // Explicit set extensions must themselves be responsive.
  for (int h = 0; h < inst.hospital_count(); ++h)
    if (inst.hospital_prefs[h].extension == SetExtension::Explicit) {
      try {
        if (!check_responsive_hospital(inst, h).holds)
          report.add("explicit_extension_not_responsive",
                     "hospital " + inst.hospitals[h].id +
                         " explicit order violates responsiveness",
                     true);
      } catch (const std::invalid_argument& e) {
        report.add("explicit_extension_incomplete", e.what(), true);
      }
    }

  ordered_json out;
  out["validation"] = validation_to_json(report);
  bool all_hold = true;
  ordered_json verdicts = ordered_json::array();
  for (const std::string& name : axioms) {
    try {
      AxiomVerdict v;
      if (name == "cpi") v = check_cpi(inst).verdict;
      else if (name == "rvt") v = check_rvt_all(inst);
      else if (name == "responsive") v = check_couple_responsive_all(inst);
      else if (name == "rf") v = check_rf(inst);
      else if (name == "srf") v = check_srf(inst);
      else if (name == "scpi") v = check_scpi(inst);
      else if (name == "cpc") v = check_cpc(inst);
      else if (name == "scpc") v = check_scpc(inst);
      else throw ParseError("--axioms", "unknown axiom " + name);
      all_hold &= v.holds;
      verdicts.push_back(verdict_to_json(inst, v));
    } catch (const PreconditionError& e) {
      all_hold = false;
      verdicts.push_back({{"axiom", name}, {"holds", nullptr}, {"error", e.what()}});
    }
  }
  out["axioms"] = std::move(verdicts);
  emit(out, pretty);
  if (!report.ok()) return kInputError;
  return all_hold ? kOk : kNegative;
}

int cmd_solve(const std::string& file, const std::string& algorithm, bool trace,
              bool verify, bool pretty) {
  MarketInstance inst = load_instance(file);
  ValidationReport report = validate_instance(inst, ValidationMode::Permissive);
  if (!report.ok()) {
    std::cerr << validation_to_json(report).dump() << "\n";
    return kInputError;
  }
  SolverReport rep = run_solver(inst, algorithm);
  ordered_json out = solver_report_to_json(inst, rep, verify);
  if (trace) {
    std::istringstream lines(trace_to_text(rep.trace, inst));
    ordered_json arr = ordered_json::array();
    for (std::string line; std::getline(lines, line);) arr.push_back(line);
    out["trace"] = std::move(arr);
  }
  emit(out, pretty);
  if (rep.refused) return kNegative;
  if (verify && rep.stability && !rep.stability->stable()) return kNegative;
  return kOk;
}

int cmd_check(const std::string& file, const std::string& matching_file,
              const std::string& semantics, bool pretty) {
  MarketInstance inst = load_instance(file);
  Matching mu = load_matching(matching_file, inst);
  StabilityVerdict v = is_stable(inst, mu, parse_semantics(semantics));
  emit(stability_to_json(inst, v), pretty);
  return v.stable() ? kOk : kNegative;
}

int cmd_enumerate(const std::string& file, bool stable_only, const std::string& semantics,
                  long long limit, bool count_only, int jobs, long long max_candidates,
                  bool pretty) {
  MarketInstance inst = load_instance(file);
  EnumerationLimits limits{max_candidates, jobs};
  Semantics sem = parse_semantics(semantics);
  std::vector<Matching> found =
      stable_only ? enumerate_stable(inst, sem, limits) : enumerate_matchings(inst, limits);
  ordered_json out;
  out["semantics"] = semantics;
  out["stable_only"] = stable_only;
  out["count"] = found.size();
  if (!count_only) {
    ordered_json list = ordered_json::array();
    for (const Matching& m : found) {
      if (limit >= 0 && static_cast<long long>(list.size()) >= limit) break;
      list.push_back(matching_to_json(inst, m));
    }
    out["matchings"] = std::move(list);
  }
  emit(out, pretty);
  return stable_only && found.empty() ? kNegative : kOk;
}

int cmd_generate(const std::string& family, const std::vector<int>& capacities,
                 int case_tag, const std::string& output, bool pretty) {
  MarketInstance inst;
  std::vector<int> caps = capacities;
  if (family == "example1") {
    inst = example1();
  } else if (family == "example2") {
    inst = example2();
  } else if (family == "example3") {
    inst = example3();
  } else if (family == "rf_violation") {
    if (caps.empty()) caps = {2, 2};
    inst = build_rf_violation(default_rf_violation_spec(caps));
  } else if (family == "scpi_violation") {
    if (caps.empty()) caps = {2, 2};
    inst = build_scpi_violation(default_scpi_violation_spec(caps, case_tag));
  } else if (family == "srf_violation") {
    if (caps.empty()) caps = {2, 2, 2};
    inst = build_srf_violation(default_srf_violation_spec(caps));
  } else {
    throw ParseError("--family", "unknown family " + family);
  }
  std::string text = serialize_instance(inst);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw ParseError("", "cannot write " + output);
    out << text;
  }
  ordered_json summary = {{"family", family},
                          {"hospitals", inst.hospital_count()},
                          {"doctors", inst.doctor_count()},
                          {"couples", inst.couple_count()}};
  if (!output.empty() && output != "-") {
    summary["file"] = output;
    emit(summary, pretty);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable matching with couples: axioms, solvers, stability oracle"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent JSON output");

  auto* validate = app.add_subcommand("validate", "check an instance and axioms");
  std::string v_file;
  std::vector<std::string> v_axioms;
  bool v_permissive = false;
  validate->add_option("file", v_file)->required();
  validate->add_option("--axioms", v_axioms, "comma separated axiom names")
      ->delimiter(',');
  validate->add_flag("--permissive", v_permissive);

  auto* solve = app.add_subcommand("solve", "run a matching algorithm");
  std::string s_file, s_algorithm;
  bool s_trace = false, s_verify = false;
  solve->add_option("file", s_file)->required();
  solve->add_option("--algorithm", s_algorithm)
      ->required()
      ->check(CLI::IsMember({"dpda", "sda", "alg1", "alg2", "alg3", "alg4"}));
  solve->add_flag("--trace", s_trace);
  solve->add_flag("--verify", s_verify);

  auto* check = app.add_subcommand("check", "stability of a given matching");
  std::string c_file, c_matching, c_semantics = "forced";
  check->add_option("file", c_file)->required();
  check->add_option("matching", c_matching)->required();
  check->add_option("--semantics", c_semantics)
      ->check(CLI::IsMember({"forced", "rank_lex", "explicit"}));

  auto* enumerate = app.add_subcommand("enumerate", "walk all feasible matchings");
  std::string e_file, e_semantics = "forced";
  bool e_stable = false, e_count_only = false;
  long long e_limit = 20;
  int e_jobs = 1;
  long long e_max = max_candidates_default();
  enumerate->add_option("file", e_file)->required();
  enumerate->add_flag("--stable-only", e_stable);
  enumerate->add_option("--semantics", e_semantics)
      ->check(CLI::IsMember({"forced", "rank_lex", "explicit"}));
  enumerate->add_option("--limit", e_limit, "matchings listed in the report");
  enumerate->add_flag("--count-only", e_count_only);
  enumerate->add_option("--jobs", e_jobs)->check(CLI::PositiveNumber);
  enumerate->add_option("--max-candidates", e_max);

  auto* generate = app.add_subcommand("generate", "emit a constructed instance");
  std::string g_family, g_output;
  std::vector<int> g_capacities;
  int g_case = 2;
  generate->add_option("--family", g_family)->required();
  generate->add_option("--capacities", g_capacities)->delimiter(',');
  generate->add_option("--case", g_case)->check(CLI::IsMember({1, 2}));
  generate->add_option("-o,--output", g_output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(v_file, v_axioms, v_permissive, pretty);
    if (*solve) return cmd_solve(s_file, s_algorithm, s_trace, s_verify, pretty);
    if (*check) return cmd_check(c_file, c_matching, c_semantics, pretty);
    if (*enumerate)
      return cmd_enumerate(e_file, e_stable, e_semantics, e_limit, e_count_only, e_jobs,
                           e_max, pretty);
    if (*generate) return cmd_generate(g_family, g_capacities, g_case, g_output, pretty);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConstructionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const GuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
