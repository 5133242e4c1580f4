#include "stablecouples/solvers.hpp"

#include <algorithm>
#include <numeric>

namespace stablecouples {

namespace {

void attach_stability(const MarketInstance& inst, SolverReport& rep) {
  if (rep.matching) rep.stability = is_stable(inst, *rep.matching, Semantics::ForcedOnly);
}

bool gate(SolverReport& rep, const AxiomVerdict& verdict) {
  rep.preconditions.push_back(verdict);
  if (!verdict.holds && !rep.refused) {
    rep.refused = true;
    rep.refusal_reason = "precondition failed: " + axiom_name(verdict.axiom);
  }
  return verdict.holds;
}

// One serial-dictatorship step on top of the accumulated matching.
void sda_step(const MarketInstance& inst, int doctor, const Ranking& list,
              Matching& acc, EngineTrace& trace) {
  EngineResult r = run_sda(inst, {{doctor, list}}, acc);
  acc = std::move(r.matching);
  for (const TraceEvent& e : r.trace.events) trace.events.push_back(e);
}

// Hospitals in order of first appearance as an f-coordinate of the couple
// preference.
Ranking f_component_order(const Ranking& cp, int n_hospitals) {
  std::vector<int> order;
  std::vector<bool> seen(n_hospitals + 1, false);
  for (int p = 0; p < cp.size(); ++p) {
    int hf = pair_decode(cp.at(p), n_hospitals).first;
    if (!seen[hf]) {
      seen[hf] = true;
      order.push_back(hf);
    }
  }
  return Ranking(std::move(order), n_hospitals + 1);
}

std::vector<int> remaining_vacancies(const MarketInstance& inst, const Matching& acc) {
  std::vector<int> vacancy(inst.hospital_count());
  for (int h = 0; h < inst.hospital_count(); ++h)
    vacancy[h] = inst.hospitals[h].capacity;
  for (int d = 0; d < inst.doctor_count(); ++d)
    if (acc.of(d) != inst.none_hospital()) --vacancy[acc.of(d)];
  return vacancy;
}

// Walk the couple preference top-down and take the first pair both members
// can enter given the remaining vacancies.
bool joint_propose(const MarketInstance& inst, int couple, Matching& acc,
                   EngineTrace& trace) {
  const Couple& c = inst.couples.at(couple);
  const Ranking& cp = inst.couple_prefs.at(couple);
  const int none = inst.none_hospital();
  std::vector<int> vacancy = remaining_vacancies(inst, acc);
  for (int p = 0; p < cp.size(); ++p) {
    auto [a, b] = pair_decode(cp.at(p), inst.hospital_count());
    bool fits = a == b ? (a == none || vacancy[a] >= 2)
                       : (a == none || vacancy[a] >= 1) &&
                             (b == none || vacancy[b] >= 1);
    trace.add(TraceEvent::Kind::Propose, c.f, a);
    trace.add(TraceEvent::Kind::Propose, c.m, b);
    if (!fits) {
      if (a != none) trace.add(TraceEvent::Kind::Reject, c.f, a);
      if (b != none) trace.add(TraceEvent::Kind::Reject, c.m, b);
      continue;
    }
    acc.seat.at(c.f) = a;
    acc.seat.at(c.m) = b;
    trace.add(TraceEvent::Kind::TentativeAccept, c.f, a);
    trace.add(TraceEvent::Kind::TentativeAccept, c.m, b);
    return true;
  }
  return false;
}

}  // namespace

SolverReport solve_alg1(const MarketInstance& inst) {
  SolverReport rep;
  rep.algorithm = "alg1";
  CpiResult cpi = check_cpi(inst);
  if (!gate(rep, cpi.verdict)) return rep;
  MarketInstance norm = normalize_for_cpi(inst);
  rep.notes.push_back("couple preconditions evaluated with CPI-normalized labels");
  bool ok = gate(rep, check_rvt_all(norm));
  ok &= gate(rep, check_rf(norm));
  if (!ok) return rep;

  const Ranking& common = *cpi.common;
  std::vector<int> couple_of(norm.doctor_count(), -1);
  for (int c = 0; c < norm.couple_count(); ++c) couple_of[norm.couples[c].m] = c;

  Matching acc(norm.doctor_count(), norm.none_hospital());
  for (int p = 0; p < common.size(); ++p) {
    int d = common.at(p);
    if (d == norm.none_doctor()) continue;
    if (int c = couple_of[d]; c >= 0) {
      int anchor = acc.of(norm.couples[c].f);
      Ranking list = conditional_preference(norm.couple_prefs[c], norm.hospital_count(),
                                            CoupleMember::M, anchor);
      sda_step(norm, d, list, acc, rep.trace);
    } else {
      sda_step(norm, d, norm.doctor_prefs[d], acc, rep.trace);
    }
  }
  rep.matching = std::move(acc);
  attach_stability(inst, rep);
  return rep;
}

SolverReport solve_alg2(const MarketInstance& inst) {
  SolverReport rep;
  rep.algorithm = "alg2";
  CpiResult cpi = check_cpi(inst);
  if (!gate(rep, cpi.verdict)) return rep;
  if (!gate(rep, check_scpi(inst))) return rep;
  MarketInstance norm = normalize_for_cpi(inst);
  rep.notes.push_back("couple preconditions evaluated with CPI-normalized labels");

  const Ranking& common = *cpi.common;
  const int H = norm.hospital_count();
  const int none = norm.none_hospital();
  int min_capacity = norm.hospitals[0].capacity;
  for (const auto& h : norm.hospitals) min_capacity = std::min(min_capacity, h.capacity);

  // Couples that fit below every hospital's capacity threshold propose
  // member-wise; the rest propose jointly.  Couples are already sorted by
  // m-rank after normalization.
  std::vector<bool> joint(norm.couple_count(), false);
  int last_joint = -1;
  for (int c = 0; c < norm.couple_count(); ++c)
    if (common.position_of(norm.couples[c].m) >= min_capacity) {
      joint[c] = true;
      last_joint = c;
    }

  std::vector<int> couple_of(norm.doctor_count(), -1);
  for (int c = 0; c < norm.couple_count(); ++c) {
    couple_of[norm.couples[c].f] = c;
    couple_of[norm.couples[c].m] = c;
  }
  std::vector<int> single_lookup(norm.doctor_count(), 0);
  for (int s : norm.singles) single_lookup[s] = 1;

  Matching acc(norm.doctor_count(), none);
  std::vector<bool> seated(norm.doctor_count(), false);
  auto place = [&](int d, const Ranking& list) {
    sda_step(norm, d, list, acc, rep.trace);
    seated[d] = true;
  };

  for (int p = 0; p < common.size(); ++p) {
    int d = common.at(p);
    if (d == norm.none_doctor() || seated[d]) continue;
    int c = couple_of[d];
    if (c < 0) {
      place(d, norm.doctor_prefs[d]);
      continue;
    }
    const Couple& pair = norm.couples[c];
    if (!joint[c]) {
      if (d == pair.f) {
        place(d, f_component_order(norm.couple_prefs[c], H));
      } else {
        Ranking list = conditional_preference(norm.couple_prefs[c], H, CoupleMember::M,
                                              acc.of(pair.f));
        place(d, list);
      }
      continue;
    }
    // Jointly proposing couple; d is its f-member (m ranks below f).
    if (c != last_joint) {
      joint_propose(norm, c, acc, rep.trace);
      seated[pair.f] = seated[pair.m] = true;
      continue;
    }
    // Terminal couple: branch on a single doctor between f and m.
    int between_single = -1;
    for (int q = common.position_of(pair.f) + 1; q < common.position_of(pair.m); ++q)
      if (single_lookup[common.at(q)]) between_single = common.at(q);
    if (between_single < 0) {
      joint_propose(norm, c, acc, rep.trace);
      seated[pair.f] = seated[pair.m] = true;
      continue;
    }
    rep.notes.push_back("alg2 terminal rule: case 2");
    std::vector<int> vacancy = remaining_vacancies(norm, acc);
    const Ranking& s_pref = norm.doctor_prefs[between_single];
    int worst = -1;
    for (int h = 0; h < H; ++h)
      if (vacancy[h] >= 1 && (worst == -1 || s_pref.prefers(worst, h))) worst = h;
    const Ranking& cp = norm.couple_prefs[c];
    int best_f = -1;
    for (int h = 0; h < H; ++h) {
      if (vacancy[h] < 1) continue;
      if (h == worst && vacancy[h] < 2) continue;
      if (best_f == -1 ||
          cp.prefers(norm.pair(h, worst), norm.pair(best_f, worst)))
        best_f = h;
    }
    acc.seat[pair.f] = best_f;
    acc.seat[pair.m] = worst;
    rep.trace.add(TraceEvent::Kind::TentativeAccept, pair.f, best_f);
    rep.trace.add(TraceEvent::Kind::TentativeAccept, pair.m, worst);
    seated[pair.f] = seated[pair.m] = true;
    place(between_single, s_pref);
  }
  rep.matching = std::move(acc);
  attach_stability(inst, rep);
  return rep;
}

SolverReport solve_alg3(const MarketInstance& inst) {
  SolverReport rep;
  rep.algorithm = "alg3";
  bool ok = gate(rep, check_cpc(inst));
  ok &= gate(rep, check_rvt_all(inst));
  bool rf_ok = gate(rep, check_rf(inst));
  ok &= rf_ok;
  if (rf_ok)
    ok &= gate(rep, check_srf(inst));
  else
    rep.notes.push_back("srf skipped: rf is its precondition");
  if (!ok) return rep;

  std::vector<ProposalStream> streams;
  for (int s : inst.singles)
    streams.push_back(ProposalStream::fixed(s, inst.doctor_prefs[s]));
  for (int c = 0; c < inst.couple_count(); ++c) {
    streams.push_back(
        ProposalStream::fixed(inst.couples[c].f, inst.doctor_prefs[inst.couples[c].f]));
    streams.push_back(
        ProposalStream::conditional(inst.couples[c].m, c, CoupleMember::M));
  }
  EngineResult r = run_dpda(inst, streams);
  rep.matching = std::move(r.matching);
  rep.trace = std::move(r.trace);
  attach_stability(inst, rep);
  return rep;
}

SolverReport solve_alg4(const MarketInstance& inst) {
  SolverReport rep;
  rep.algorithm = "alg4";
  bool cpc_ok = gate(rep, check_cpc(inst));
  if (cpc_ok)
    gate(rep, check_scpc(inst));
  else
    rep.notes.push_back("scpc skipped: cpc is its precondition");
  gate(rep, check_rvt_all(inst));
  gate(rep, check_rf(inst));
  if (rep.refused) return rep;

  const Ranking& ref = inst.hospital_prefs[0].individual;
  std::vector<int> by_f(inst.couple_count());
  std::iota(by_f.begin(), by_f.end(), 0);
  std::sort(by_f.begin(), by_f.end(), [&](int a, int b) {
    return ref.position_of(inst.couples[a].f) < ref.position_of(inst.couples[b].f);
  });

  std::vector<int> couple_of_m(inst.doctor_count(), -1);
  for (int c = 0; c < inst.couple_count(); ++c) couple_of_m[inst.couples[c].m] = c;

  // Cut the common ranking at each couple's f; the cuts are hospital
  // independent under SCPC.
  std::vector<std::vector<int>> blocks;
  int from = 0;
  for (int c : by_f) {
    int cut = ref.position_of(inst.couples[c].f);
    std::vector<int> block;
    for (int p = from; p <= cut; ++p) block.push_back(ref.at(p));
    blocks.push_back(std::move(block));
    from = cut + 1;
  }
  std::vector<int> tail;
  for (int p = from; p < ref.size(); ++p)
    if (ref.at(p) != inst.none_doctor()) tail.push_back(ref.at(p));
  blocks.push_back(std::move(tail));

  Matching acc;
  for (const std::vector<int>& block : blocks) {
    if (block.empty()) continue;
    std::vector<ProposalStream> streams;
    for (int d : block) {
      if (int c = couple_of_m[d]; c >= 0) {
        int anchor = acc.seat.empty() ? inst.none_hospital() : acc.of(inst.couples[c].f);
        streams.push_back(ProposalStream::fixed(
            d, conditional_preference(inst.couple_prefs[c], inst.hospital_count(),
                                      CoupleMember::M, anchor)));
      } else {
        streams.push_back(ProposalStream::fixed(d, inst.doctor_prefs[d]));
      }
    }
    EngineResult r = run_dpda(inst, streams, acc);
    acc = std::move(r.matching);
    for (const TraceEvent& e : r.trace.events) rep.trace.events.push_back(e);
  }
  rep.matching = std::move(acc);
  attach_stability(inst, rep);
  return rep;
}

SolverReport solve_dpda(const MarketInstance& inst) {
  SolverReport rep;
  rep.algorithm = "dpda";
  std::vector<ProposalStream> streams;
  for (int d = 0; d < inst.doctor_count(); ++d)
    streams.push_back(ProposalStream::fixed(d, inst.doctor_prefs[d]));
  EngineResult r = run_dpda(inst, streams);
  rep.matching = std::move(r.matching);
  rep.trace = std::move(r.trace);
  attach_stability(inst, rep);
  return rep;
}

SolverReport solve_sda(const MarketInstance& inst) {
  SolverReport rep;
  rep.algorithm = "sda";
  CpiResult cpi = check_cpi(inst);
  if (!gate(rep, cpi.verdict)) return rep;
  std::vector<SdaParticipant> order;
  for (int p = 0; p < cpi.common->size(); ++p) {
    int d = cpi.common->at(p);
    if (d != inst.none_doctor()) order.push_back({d, inst.doctor_prefs[d]});
  }
  EngineResult r = run_sda(inst, order);
  rep.matching = std::move(r.matching);
  rep.trace = std::move(r.trace);
  attach_stability(inst, rep);
  return rep;
}

SolverReport run_solver(const MarketInstance& inst, const std::string& algorithm) {
  if (algorithm == "alg1") return solve_alg1(inst);
  if (algorithm == "alg2") return solve_alg2(inst);
  if (algorithm == "alg3") return solve_alg3(inst);
  if (algorithm == "alg4") return solve_alg4(inst);
  if (algorithm == "dpda") return solve_dpda(inst);
  if (algorithm == "sda") return solve_sda(inst);
  throw std::invalid_argument("unknown algorithm: " + algorithm);
}

}  // namespace stablecouples
