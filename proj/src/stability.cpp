#include "stablecouples/stability.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "stablecouples/engine.hpp"  // GuardError
#include "stablecouples/set_order.hpp"

namespace stablecouples {

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::ForcedOnly: return "forced";
    case Semantics::RankVectorLex: return "rank_lex";
    case Semantics::Explicit: return "explicit";
  }
  return "?";
}

std::string status_name(StabilityVerdict::Status s) {
  using St = StabilityVerdict::Status;
  switch (s) {
    case St::StableForAllResponsiveExtensions: return "stable_for_all_responsive_extensions";
    case St::UnstableForAllResponsiveExtensions: return "unstable_for_all_responsive_extensions";
    case St::ExtensionDependent: return "extension_dependent";
    case St::StableUnderCanonical: return "stable_under_canonical";
    case St::UnstableUnderCanonical: return "unstable_under_canonical";
  }
  return "?";
}

InterestAnswer hospital_interested(const MarketInstance& inst, int hospital,
                                   const Matching& mu, const std::vector<int>& incoming,
                                   Semantics semantics, const std::vector<int>& keep) {
  std::vector<int> current;
  for (int d = 0; d < inst.doctor_count(); ++d)
    if (mu.of(d) == hospital) current.push_back(d);
  for (int d : incoming)
    if (mu.of(d) == hospital)
      throw std::invalid_argument("incoming doctor already seated at the hospital");

  std::vector<int> removable;
  for (int d : current)
    if (std::find(keep.begin(), keep.end(), d) == keep.end()) removable.push_back(d);

  int capacity = inst.hospitals.at(hospital).capacity;
  InterestAnswer answer;
  bool any_incomparable = false;
  for (unsigned mask = 0; mask < (1u << removable.size()); ++mask) {
    std::vector<int> displaced, next;
    for (size_t i = 0; i < removable.size(); ++i)
      if (mask & (1u << i)) displaced.push_back(removable[i]);
    for (int d : current)
      if (std::find(displaced.begin(), displaced.end(), d) == displaced.end())
        next.push_back(d);
    next.insert(next.end(), incoming.begin(), incoming.end());
    if (static_cast<int>(next.size()) > capacity) continue;

    if (semantics == Semantics::ForcedOnly) {
      switch (forced_compare(inst, hospital, next, current)) {
        case PartialOrder::Better:
          return {Interest::Yes, displaced, true};
        case PartialOrder::Incomparable:
          any_incomparable = true;
          break;
        default:
          break;
      }
    } else {
      int cmp = semantics == Semantics::RankVectorLex
                    ? rank_lex_compare(inst, hospital, next, current)
                    : explicit_compare(inst, hospital, next, current);
      if (cmp < 0) {
        bool forced = forced_compare(inst, hospital, next, current) == PartialOrder::Better;
        return {Interest::Yes, displaced, forced};
      }
    }
  }
  answer.value = any_incomparable ? Interest::Undetermined : Interest::No;
  return answer;
}

namespace {

// Hospital consents required by one couple target; fills evidence on success.
// Returns No/Undetermined/Yes aggregated over the required sides.
Interest couple_target_interest(const MarketInstance& inst, const Matching& mu,
                                int couple, int hf, int hm, Semantics semantics,
                                BlockingWitness& w) {
  const int none = inst.none_hospital();
  const Couple& c = inst.couples.at(couple);
  bool anchored_f = mu.of(c.f) == hf;
  bool anchored_m = mu.of(c.m) == hm;

  struct Side {
    int hospital;
    std::vector<int> incoming;
    std::vector<int> keep;
  };
  std::vector<Side> sides;

  if (hf == hm && hf != none) {
    w.couple_case = BlockingWitness::CoupleCase::SameHospital;
    std::vector<int> incoming, keep;
    for (int member : {c.f, c.m})
      (mu.of(member) == hf ? keep : incoming).push_back(member);
    sides.push_back({hf, std::move(incoming), std::move(keep)});
  } else if (anchored_f || anchored_m) {
    w.couple_case = BlockingWitness::CoupleCase::OneAnchored;
    int mover = anchored_f ? c.m : c.f;
    int target = anchored_f ? hm : hf;
    if (target != none) sides.push_back({target, {mover}, {}});
  } else {
    w.couple_case = BlockingWitness::CoupleCase::BothMove;
    if (hf != none) sides.push_back({hf, {c.f}, {}});
    if (hm != none) sides.push_back({hm, {c.m}, {}});
  }

  bool undetermined = false;
  for (const Side& side : sides) {
    InterestAnswer a =
        hospital_interested(inst, side.hospital, mu, side.incoming, semantics, side.keep);
    if (a.value == Interest::No) return Interest::No;
    if (a.value == Interest::Undetermined) {
      undetermined = true;
      w.evidence.push_back({side.hospital, {}, false});
    } else {
      w.evidence.push_back({side.hospital, a.displaced, a.forced});
    }
  }
  return undetermined ? Interest::Undetermined : Interest::Yes;
}

}  // namespace

BlockingScan find_blocking_pairs(const MarketInstance& inst, const Matching& mu,
                                 Semantics semantics) {
  BlockingScan scan;
  const int H = inst.hospital_count();
  const int none = inst.none_hospital();

  for (int s : inst.singles) {
    for (int h = 0; h < H; ++h) {
      if (mu.of(s) == h) continue;
      if (!inst.doctor_prefs[s].prefers(h, mu.of(s))) continue;
      InterestAnswer a = hospital_interested(inst, h, mu, {s}, semantics);
      if (a.value == Interest::No) continue;
      BlockingWitness w;
      w.kind = BlockingWitness::Kind::Single;
      w.hospital_f = h;
      w.doctor = s;
      if (a.value == Interest::Yes) {
        w.evidence.push_back({h, a.displaced, a.forced});
        scan.blocking.push_back(std::move(w));
      } else {
        w.evidence.push_back({h, {}, false});
        scan.undetermined.push_back(std::move(w));
      }
    }
  }

  bool scan_none_targets = inst.total_capacity() != inst.doctor_count();
  int top = scan_none_targets ? none : H - 1;
  for (int c = 0; c < inst.couple_count(); ++c) {
    const Couple& pair = inst.couples[c];
    int current = inst.pair(mu.of(pair.f), mu.of(pair.m));
    for (int hf = 0; hf <= top; ++hf)
      for (int hm = 0; hm <= top; ++hm) {
        int target = inst.pair(hf, hm);
        if (target == current) continue;
        if (!inst.couple_prefs[c].prefers(target, current)) continue;
        BlockingWitness w;
        w.kind = BlockingWitness::Kind::Couple;
        w.hospital_f = hf;
        w.hospital_m = hm;
        w.couple = c;
        Interest overall = couple_target_interest(inst, mu, c, hf, hm, semantics, w);
        if (overall == Interest::Yes)
          scan.blocking.push_back(std::move(w));
        else if (overall == Interest::Undetermined)
          scan.undetermined.push_back(std::move(w));
      }
  }
  return scan;
}

StabilityVerdict is_stable(const MarketInstance& inst, const Matching& mu,
                           Semantics semantics) {
  BlockingScan scan = find_blocking_pairs(inst, mu, semantics);
  StabilityVerdict v;
  v.witnesses = std::move(scan.blocking);
  v.undetermined = std::move(scan.undetermined);
  using St = StabilityVerdict::Status;
  if (semantics == Semantics::ForcedOnly) {
    if (!v.witnesses.empty())
      v.status = St::UnstableForAllResponsiveExtensions;
    else if (!v.undetermined.empty())
      v.status = St::ExtensionDependent;
    else
      v.status = St::StableForAllResponsiveExtensions;
  } else {
    v.status = v.witnesses.empty() ? St::StableUnderCanonical : St::UnstableUnderCanonical;
  }
  return v;
}

bool replay_blocking_witness(const MarketInstance& inst, const Matching& mu,
                             const BlockingWitness& w, Semantics semantics) {
  auto evidence_holds = [&](const HospitalEvidence& e, const std::vector<int>& incoming,
                            const std::vector<int>& keep) {
    std::vector<int> current, next;
    for (int d = 0; d < inst.doctor_count(); ++d)
      if (mu.of(d) == e.hospital) current.push_back(d);
    for (int d : keep)
      if (std::find(e.displaced.begin(), e.displaced.end(), d) != e.displaced.end())
        return false;
    for (int d : current)
      if (std::find(e.displaced.begin(), e.displaced.end(), d) == e.displaced.end())
        next.push_back(d);
    next.insert(next.end(), incoming.begin(), incoming.end());
    if (static_cast<int>(next.size()) > inst.hospitals.at(e.hospital).capacity)
      return false;
    if (e.forced)
      return forced_compare(inst, e.hospital, next, current) == PartialOrder::Better;
    int cmp = semantics == Semantics::Explicit
                  ? explicit_compare(inst, e.hospital, next, current)
                  : rank_lex_compare(inst, e.hospital, next, current);
    return cmp < 0;
  };

  if (w.kind == BlockingWitness::Kind::Single) {
    if (mu.of(w.doctor) == w.hospital_f) return false;
    if (!inst.doctor_prefs[w.doctor].prefers(w.hospital_f, mu.of(w.doctor)))
      return false;
    return w.evidence.size() == 1 && evidence_holds(w.evidence[0], {w.doctor}, {});
  }

  const Couple& c = inst.couples.at(w.couple);
  int current = inst.pair(mu.of(c.f), mu.of(c.m));
  int target = inst.pair(w.hospital_f, w.hospital_m);
  if (target == current) return false;
  if (!inst.couple_prefs[w.couple].prefers(target, current)) return false;

  BlockingWitness probe;
  Interest overall = couple_target_interest(inst, mu, w.couple, w.hospital_f,
                                            w.hospital_m, semantics, probe);
  if (overall != Interest::Yes || probe.couple_case != w.couple_case) return false;
  if (probe.evidence.size() != w.evidence.size()) return false;
  for (size_t i = 0; i < w.evidence.size(); ++i) {
    std::vector<int> incoming, keep;
    if (w.couple_case == BlockingWitness::CoupleCase::SameHospital) {
      for (int member : {c.f, c.m})
        (mu.of(member) == w.hospital_f ? keep : incoming).push_back(member);
    } else {
      incoming = {w.evidence[i].hospital == w.hospital_f ? c.f : c.m};
    }
    if (!evidence_holds(w.evidence[i], incoming, keep)) return false;
  }
  return true;
}

long long assignment_space(const MarketInstance& inst) {
  long long space = 1;
  for (int d = 0; d < inst.doctor_count(); ++d) {
    if (space > (1LL << 62) / (inst.hospital_count() + 1)) return 1LL << 62;
    space *= inst.hospital_count() + 1;
  }
  return space;
}

namespace {

void enumerate_suffix(const MarketInstance& inst, std::vector<int>& vacancy,
                      Matching& partial, int doctor,
                      const std::function<void(const Matching&)>& visit) {
  if (doctor == inst.doctor_count()) {
    visit(partial);
    return;
  }
  for (int h = 0; h <= inst.hospital_count(); ++h) {
    if (h < inst.hospital_count()) {
      if (vacancy[h] == 0) continue;
      --vacancy[h];
    }
    partial.seat[doctor] = h;
    enumerate_suffix(inst, vacancy, partial, doctor + 1, visit);
    if (h < inst.hospital_count()) ++vacancy[h];
  }
  partial.seat[doctor] = inst.none_hospital();
}

void check_bound(const MarketInstance& inst, const EnumerationLimits& limits) {
  long long space = assignment_space(inst);
  if (space > limits.max_candidates)
    throw GuardError("enumeration bound exceeded: " + std::to_string(space) +
                     " raw assignments, limit " + std::to_string(limits.max_candidates));
}

}  // namespace

void for_each_matching(const MarketInstance& inst, const EnumerationLimits& limits,
                       const std::function<void(const Matching&)>& visit) {
  check_bound(inst, limits);
  const int D = inst.doctor_count();
  const int H = inst.hospital_count();
  std::vector<int> vacancy(H);
  for (int h = 0; h < H; ++h) vacancy[h] = inst.hospitals[h].capacity;

  if (limits.jobs <= 1 || D < 2) {
    Matching partial(D, inst.none_hospital());
    enumerate_suffix(inst, vacancy, partial, 0, visit);
    return;
  }

  // Parallel: one task per assignment prefix of the first two doctors.
  struct Task {
    int h0, h1;
  };
  std::vector<Task> tasks;
  for (int h0 = 0; h0 <= H; ++h0)
    for (int h1 = 0; h1 <= H; ++h1) {
      if (h0 < H && h1 == h0 && inst.hospitals[h0].capacity < 2) continue;
      if (h0 < H && inst.hospitals[h0].capacity == 0) continue;
      if (h1 < H && inst.hospitals[h1].capacity == 0) continue;
      tasks.push_back({h0, h1});
    }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      std::vector<int> vac = vacancy;
      Matching partial(D, inst.none_hospital());
      if (tasks[t].h0 < H) --vac[tasks[t].h0];
      if (tasks[t].h1 < H) --vac[tasks[t].h1];
      partial.seat[0] = tasks[t].h0;
      partial.seat[1] = tasks[t].h1;
      enumerate_suffix(inst, vac, partial, 2, visit);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < limits.jobs; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::vector<Matching> enumerate_matchings(const MarketInstance& inst,
                                          const EnumerationLimits& limits) {
  std::vector<Matching> out;
  if (limits.jobs <= 1) {
    for_each_matching(inst, limits, [&](const Matching& m) { out.push_back(m); });
    return out;
  }
  std::mutex lock;
  for_each_matching(inst, limits, [&](const Matching& m) {
    std::scoped_lock guard(lock);
    out.push_back(m);
  });
  std::sort(out.begin(), out.end(),
            [](const Matching& a, const Matching& b) { return a.seat < b.seat; });
  return out;
}

std::vector<Matching> enumerate_stable(const MarketInstance& inst, Semantics semantics,
                                       const EnumerationLimits& limits) {
  std::vector<Matching> out;
  std::mutex lock;
  for_each_matching(inst, limits, [&](const Matching& m) {
    if (!is_stable(inst, m, semantics).stable()) return;
    if (limits.jobs <= 1) {
      out.push_back(m);
    } else {
      std::scoped_lock guard(lock);
      out.push_back(m);
    }
  });
  if (limits.jobs > 1)
    std::sort(out.begin(), out.end(),
              [](const Matching& a, const Matching& b) { return a.seat < b.seat; });
  return out;
}

long long count_feasible_matchings(const MarketInstance& inst,
                                   const EnumerationLimits& limits) {
  std::atomic<long long> n{0};
  for_each_matching(inst, limits, [&](const Matching&) { ++n; });
  return n.load();
}

}  // namespace stablecouples
