#include "stablecouples/engine.hpp"

#include <algorithm>
#include <sstream>

namespace stablecouples {

ProposalStream ProposalStream::fixed(int owner, Ranking list) {
  ProposalStream s;
  s.owner = owner;
  s.kind = Kind::StaticList;
  s.list = std::move(list);
  return s;
}

ProposalStream ProposalStream::conditional(int owner, int couple, CoupleMember proposer) {
  ProposalStream s;
  s.owner = owner;
  s.kind = Kind::ConditionalOnPartner;
  s.couple = couple;
  s.proposer = proposer;
  return s;
}

std::string trace_to_text(const EngineTrace& trace, const MarketInstance& inst) {
  auto hosp = [&](int h) {
    return h == inst.none_hospital() ? std::string(kNoneToken) : inst.hospitals.at(h).id;
  };
  std::ostringstream out;
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::Propose: out << "propose"; break;
      case TraceEvent::Kind::TentativeAccept: out << "accept"; break;
      case TraceEvent::Kind::Reject: out << "reject"; break;
      case TraceEvent::Kind::StreamRebase: out << "rebase"; break;
    }
    out << '\t' << inst.doctors.at(e.doctor) << '\t' << hosp(e.hospital) << '\n';
  }
  return out.str();
}

namespace {

constexpr int kUnplaced = -2;
constexpr int kNoAnchor = -3;

struct StreamState {
  ProposalStream spec;
  int cursor = 0;
  int anchor = kNoAnchor;  // anchor of the current materialization
  bool materialized = false;
};

}  // namespace

EngineResult run_dpda(const MarketInstance& inst,
                      const std::vector<ProposalStream>& streams,
                      const Matching& frozen) {
  const int H = inst.hospital_count();
  const int D = inst.doctor_count();
  const int none = inst.none_hospital();
  const long long rebase_guard =
      static_cast<long long>(D) * (H + 1) * (D + 1);

  EngineResult res;
  std::vector<int> seat(D, none);
  std::vector<bool> is_frozen(D, false);
  std::vector<std::vector<int>> roster(H);

  if (!frozen.seat.empty()) {
    for (int d = 0; d < D; ++d) {
      int h = frozen.seat.at(d);
      if (h == none) continue;
      seat[d] = h;
      is_frozen[d] = true;
      roster.at(h).push_back(d);
    }
  }

  std::vector<StreamState> state;
  std::vector<int> stream_of(D, -1);
  for (const ProposalStream& s : streams) {
    if (s.owner < 0 || s.owner >= D)
      throw std::invalid_argument("stream owner out of range");
    if (is_frozen[s.owner])
      throw std::invalid_argument("participant is frozen: " + inst.doctors[s.owner]);
    if (stream_of[s.owner] != -1)
      throw std::invalid_argument("duplicate stream for " + inst.doctors[s.owner]);
    stream_of[s.owner] = static_cast<int>(state.size());
    state.push_back({s, 0, kNoAnchor, false});
    seat[s.owner] = kUnplaced;
  }

  // partner doctor -> streams that anchor on it
  std::vector<std::vector<int>> dependents(D);
  for (int i = 0; i < static_cast<int>(state.size()); ++i) {
    const ProposalStream& s = state[i].spec;
    if (s.kind != ProposalStream::Kind::ConditionalOnPartner) continue;
    const Couple& c = inst.couples.at(s.couple);
    int partner = s.proposer == CoupleMember::M ? c.f : c.m;
    dependents.at(partner).push_back(i);
  }

  long long rebases = 0;
  auto materialize = [&](StreamState& st, int anchor, bool count) {
    st.spec.list = conditional_preference(inst.couple_prefs.at(st.spec.couple), H,
                                          st.spec.proposer, anchor);
    st.cursor = 0;
    st.anchor = anchor;
    st.materialized = true;
    if (count) {
      res.trace.add(TraceEvent::Kind::StreamRebase, st.spec.owner, anchor);
      if (++rebases > rebase_guard)
        throw GuardError("rebase guard tripped after " + std::to_string(rebases) +
                         " stream rebases");
    }
  };

  auto seat_changed = [&](int doctor) {
    for (int i : dependents.at(doctor)) {
      StreamState& st = state[i];
      int owner = st.spec.owner;
      int new_anchor = seat[doctor] == kUnplaced ? none : seat[doctor];
      if (st.materialized && st.anchor == new_anchor) continue;
      if (seat[owner] != kUnplaced) {  // retract the dependent's seat
        if (seat[owner] != none) {
          auto& r = roster[seat[owner]];
          r.erase(std::find(r.begin(), r.end(), owner));
        }
        seat[owner] = kUnplaced;
      }
      materialize(st, new_anchor, st.materialized);
    }
  };

  for (;;) {
    int d = -1;
    for (const StreamState& st : state)
      if (seat[st.spec.owner] == kUnplaced && (d == -1 || st.spec.owner < d))
        d = st.spec.owner;
    if (d == -1) break;
    StreamState& st = state[stream_of[d]];

    if (st.spec.kind == ProposalStream::Kind::ConditionalOnPartner) {
      const Couple& c = inst.couples.at(st.spec.couple);
      int partner = st.spec.proposer == CoupleMember::M ? c.f : c.m;
      int cur = seat[partner] == kUnplaced ? none : seat[partner];
      if (!st.materialized)
        materialize(st, cur, false);
      else if (st.anchor != cur)
        materialize(st, cur, true);
    }
    const Ranking& list = st.spec.list;

    if (st.cursor >= list.size()) {  // exhausted; the doctor stays unmatched
      seat[d] = none;
      res.trace.add(TraceEvent::Kind::TentativeAccept, d, none);
      seat_changed(d);
      continue;
    }
    int h = list.at(st.cursor++);
    res.trace.add(TraceEvent::Kind::Propose, d, h);
    if (h == none) {
      seat[d] = none;
      res.trace.add(TraceEvent::Kind::TentativeAccept, d, none);
      seat_changed(d);
      continue;
    }

    auto& r = roster[h];
    const Ranking& pref = inst.hospital_prefs[h].individual;
    if (static_cast<int>(r.size()) < inst.hospitals[h].capacity) {
      r.push_back(d);
      seat[d] = h;
      res.trace.add(TraceEvent::Kind::TentativeAccept, d, h);
      seat_changed(d);
      continue;
    }
    int worst = -1;
    for (int occ : r)
      if (!is_frozen[occ] &&
          (worst == -1 || pref.position_of(occ) > pref.position_of(worst)))
        worst = occ;
    if (worst == -1 || !pref.prefers(d, worst)) {
      res.trace.add(TraceEvent::Kind::Reject, d, h);
      continue;
    }
    r.erase(std::find(r.begin(), r.end(), worst));
    seat[worst] = kUnplaced;
    res.trace.add(TraceEvent::Kind::Reject, worst, h);
    r.push_back(d);
    seat[d] = h;
    res.trace.add(TraceEvent::Kind::TentativeAccept, d, h);
    seat_changed(worst);
    seat_changed(d);
  }

  res.matching = Matching(D, none);
  for (int d = 0; d < D; ++d) res.matching.seat[d] = seat[d] == kUnplaced ? none : seat[d];
  return res;
}

EngineResult run_dpda(const MarketInstance& inst,
                      const std::vector<ProposalStream>& streams) {
  return run_dpda(inst, streams, Matching());
}

EngineResult run_sda(const MarketInstance& inst,
                     const std::vector<SdaParticipant>& order,
                     const Matching& frozen) {
  const int none = inst.none_hospital();
  EngineResult res;
  res.matching = Matching(inst.doctor_count(), none);

  std::vector<int> vacancy(inst.hospital_count());
  for (int h = 0; h < inst.hospital_count(); ++h)
    vacancy[h] = inst.hospitals[h].capacity;
  if (!frozen.seat.empty())
    for (int d = 0; d < inst.doctor_count(); ++d) {
      int h = frozen.seat.at(d);
      if (h == none) continue;
      --vacancy.at(h);
      res.matching.seat[d] = h;
    }

  for (const SdaParticipant& p : order) {
    for (int k = 0; k < p.list.size(); ++k) {
      int h = p.list.at(k);
      if (h != none && vacancy[h] <= 0) continue;
      res.trace.add(TraceEvent::Kind::Propose, p.doctor, h);
      res.trace.add(TraceEvent::Kind::TentativeAccept, p.doctor, h);
      res.matching.seat.at(p.doctor) = h;
      if (h != none) --vacancy[h];
      break;
    }
  }
  return res;
}

EngineResult run_sda(const MarketInstance& inst,
                     const std::vector<SdaParticipant>& order) {
  return run_sda(inst, order, Matching());
}

}  // namespace stablecouples
