#pragma once
// Deferred acceptance and serial dictatorship with pluggable proposal
// streams.  A stream is either a fixed list or a projection of a couple
// preference anchored at the partner's current tentative hospital; when the
// anchor moves, the stream re-materializes, the dependent doctor's tentative
// seat is retracted, and the cursor resets (a StreamRebase event).

#include <string>
#include <vector>

#include "stablecouples/market.hpp"

namespace stablecouples {

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProposalStream {
  enum class Kind { StaticList, ConditionalOnPartner };
  int owner = -1;
  Kind kind = Kind::StaticList;
  Ranking list;        // static list, or the latest materialization
  int couple = -1;     // for conditional streams
  CoupleMember proposer = CoupleMember::M;  // which member owns the stream

  static ProposalStream fixed(int owner, Ranking list);
  static ProposalStream conditional(int owner, int couple, CoupleMember proposer);
};

struct TraceEvent {
  enum class Kind { Propose, TentativeAccept, Reject, StreamRebase };
  Kind kind;
  int doctor = -1;
  int hospital = -1;
};

struct EngineTrace {
  std::vector<TraceEvent> events;
  void add(TraceEvent::Kind k, int d, int h) { events.push_back({k, d, h}); }
};

/// One event per line, tab separated, for the CLI --trace flag.
std::string trace_to_text(const EngineTrace& trace, const MarketInstance& inst);

struct EngineResult {
  Matching matching;
  EngineTrace trace;
};

/// Doctor-proposing deferred acceptance over the stream owners, on top of a
/// frozen partial matching.  Frozen doctors keep their seats and are never
/// rejected.  At capacity a hospital rejects its worst non-frozen occupant
/// when a better proposer arrives.  Aborts with GuardError after
/// |D| * |H+1| * (|D|+1) stream rebases.
EngineResult run_dpda(const MarketInstance& inst,
                      const std::vector<ProposalStream>& streams,
                      const Matching& frozen);
EngineResult run_dpda(const MarketInstance& inst,
                      const std::vector<ProposalStream>& streams);

struct SdaParticipant {
  int doctor = -1;
  Ranking list;
};

/// Serial dictatorship: in the given order, each doctor takes the best
/// hospital with a remaining vacancy on its list.  Nobody is ever displaced.
/// Seats already taken in `frozen` are unavailable.
EngineResult run_sda(const MarketInstance& inst,
                     const std::vector<SdaParticipant>& order,
                     const Matching& frozen);
EngineResult run_sda(const MarketInstance& inst,
                     const std::vector<SdaParticipant>& order);

}  // namespace stablecouples
