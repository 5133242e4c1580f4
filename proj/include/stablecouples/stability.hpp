#pragma once
// Blocking-coalition enumeration and stability verdicts.
//
// Hospital interest is three-valued under the ForcedOnly semantics because
// responsiveness only partially orders feasible sets: a swap can be forced
// better (holds in every responsive completion), forced worse in all of
// them, or extension dependent.  RankVectorLex and Explicit are total
// orders, so interest is a plain yes/no there.

#include <cstdint>
#include <functional>
#include <vector>

#include "stablecouples/market.hpp"

namespace stablecouples {

enum class Semantics { ForcedOnly, RankVectorLex, Explicit };

std::string semantics_name(Semantics s);

enum class Interest { Yes, No, Undetermined };

struct InterestAnswer {
  Interest value = Interest::No;
  std::vector<int> displaced;  // the replaced subset for a Yes
  bool forced = false;         // the recorded comparison is responsiveness-forced
};

/// Does the hospital want to swap some subset of its current doctors for
/// `incoming`?  `incoming` must be disjoint from the hospital's roster;
/// occupants listed in `keep` are never displaced (used when a couple member
/// already sits at the target hospital).
InterestAnswer hospital_interested(const MarketInstance& inst, int hospital,
                                   const Matching& mu, const std::vector<int>& incoming,
                                   Semantics semantics,
                                   const std::vector<int>& keep = {});

struct HospitalEvidence {
  int hospital = -1;
  std::vector<int> displaced;
  bool forced = false;
};

struct BlockingWitness {
  enum class Kind { Single, Couple };
  enum class CoupleCase { BothMove, OneAnchored, SameHospital };
  Kind kind = Kind::Single;
  int hospital_f = -1;  // the hospital for a single block
  int hospital_m = -1;
  int doctor = -1;
  int couple = -1;
  CoupleCase couple_case = CoupleCase::BothMove;
  std::vector<HospitalEvidence> evidence;
};

struct BlockingScan {
  std::vector<BlockingWitness> blocking;
  // ForcedOnly only: coalitions whose hospital interest is extension
  // dependent; never silently dropped.
  std::vector<BlockingWitness> undetermined;
};

/// Enumerates hospital-single blocks and hospital-pair-couple blocks under
/// the asymmetric blocking definition.  Couple targets with a none
/// coordinate are scanned only when total capacity differs from the doctor
/// count; the none side of such a target needs no hospital consent.
BlockingScan find_blocking_pairs(const MarketInstance& inst, const Matching& mu,
                                 Semantics semantics);

struct StabilityVerdict {
  enum class Status {
    StableForAllResponsiveExtensions,
    UnstableForAllResponsiveExtensions,
    ExtensionDependent,
    StableUnderCanonical,
    UnstableUnderCanonical,
  };
  Status status;
  std::vector<BlockingWitness> witnesses;
  std::vector<BlockingWitness> undetermined;
  bool stable() const {
    return status == Status::StableForAllResponsiveExtensions ||
           status == Status::StableUnderCanonical;
  }
};

std::string status_name(StabilityVerdict::Status s);

StabilityVerdict is_stable(const MarketInstance& inst, const Matching& mu,
                           Semantics semantics);

/// Re-verifies a witness: the doctor side strictly gains and each recorded
/// hospital comparison still holds under the recorded status.
bool replay_blocking_witness(const MarketInstance& inst, const Matching& mu,
                             const BlockingWitness& w, Semantics semantics);

struct EnumerationLimits {
  long long max_candidates = 10'000'000;
  int jobs = 1;
};

/// Number of raw assignments |H+1|^|D|; throws GuardError via the callers
/// when it exceeds the limit.
long long assignment_space(const MarketInstance& inst);

/// Visits every capacity-feasible matching in lexicographic assignment
/// order.  Throws GuardError when the raw assignment space exceeds the
/// limit.  The callback must be thread-safe when limits.jobs > 1; calls are
/// not ordered across jobs.
void for_each_matching(const MarketInstance& inst, const EnumerationLimits& limits,
                       const std::function<void(const Matching&)>& visit);

/// All capacity-feasible matchings, lexicographic order.
std::vector<Matching> enumerate_matchings(const MarketInstance& inst,
                                          const EnumerationLimits& limits = {});

/// The stable subset under the given semantics.  For ForcedOnly this keeps
/// matchings that are stable under every responsive extension.
std::vector<Matching> enumerate_stable(const MarketInstance& inst, Semantics semantics,
                                       const EnumerationLimits& limits = {});

long long count_feasible_matchings(const MarketInstance& inst,
                                   const EnumerationLimits& limits = {});

}  // namespace stablecouples
