#pragma once
// Core market model: hospitals with capacities, doctors partitioned into
// singles and couples, strict preference rankings, matchings, and instance
// validation.
//
// Conventions used throughout the library:
//   - Hospitals are dense indices 0..H-1; the unmatched outcome is the extra
//     slot H ("none").  Doctors are dense indices 0..D-1; the vacancy
//     pseudo-doctor used for set padding is the extra slot D.
//   - All rankings are strict total orders stored best-first.
//   - Couple allocations (h_f, h_m) are encoded as h_f * (H+1) + h_m.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stablecouples {

// Reserved token for the unmatched outcome in files and reports.
inline constexpr const char* kNoneToken = "@none";

/// A strict total order over the elements 0..universe-1, best first.
/// Lookups in both directions are O(1).
class Ranking {
 public:
  Ranking() = default;
  // order must be a permutation of 0..universe-1.
  Ranking(std::vector<int> order, int universe);

  int universe() const { return static_cast<int>(pos_.size()); }
  int size() const { return static_cast<int>(order_.size()); }
  bool empty() const { return order_.empty(); }

  // Element at a 0-based position.
  int at(int position) const { return order_.at(position); }
  // 0-based position of an element; throws naming the element if unknown.
  int position_of(int x) const;
  // 1-based rank, r_k semantics.
  int rank_of(int x) const { return position_of(x) + 1; }
  int top() const { return order_.at(0); }
  bool prefers(int a, int b) const { return position_of(a) < position_of(b); }

  const std::vector<int>& order() const { return order_; }
  bool operator==(const Ranking&) const = default;

 private:
  std::vector<int> order_;  // position -> element
  std::vector<int> pos_;    // element -> position
};

inline int pair_code(int hf, int hm, int n_hospitals) {
  return hf * (n_hospitals + 1) + hm;
}
inline std::pair<int, int> pair_decode(int code, int n_hospitals) {
  return {code / (n_hospitals + 1), code % (n_hospitals + 1)};
}

struct Hospital {
  std::string id;
  int capacity = 0;
};

struct Couple {
  int f = -1;
  int m = -1;
};

enum class SetExtension { Forced, RankLex, Explicit };

struct HospitalPref {
  // Over doctors plus the vacancy slot; the vacancy slot must be last.
  Ranking individual;
  SetExtension extension = SetExtension::RankLex;
  // Only for Explicit: every feasible subset (size <= capacity) exactly once,
  // best first.  Sets are stored sorted ascending.
  std::vector<std::vector<int>> explicit_order;
};

struct MarketInstance {
  std::vector<Hospital> hospitals;
  std::vector<std::string> doctors;  // ids; the index is the doctor handle
  std::vector<int> singles;
  std::vector<Couple> couples;
  std::vector<Ranking> doctor_prefs;    // by doctor, over hospitals + none
  std::vector<Ranking> couple_prefs;    // by couple, over encoded pairs
  std::vector<HospitalPref> hospital_prefs;  // by hospital

  int hospital_count() const { return static_cast<int>(hospitals.size()); }
  int doctor_count() const { return static_cast<int>(doctors.size()); }
  int none_hospital() const { return hospital_count(); }
  int none_doctor() const { return doctor_count(); }
  int couple_count() const { return static_cast<int>(couples.size()); }
  int total_capacity() const;

  std::optional<int> hospital_by_id(const std::string& id) const;
  std::optional<int> doctor_by_id(const std::string& id) const;

  // -1 for singles.
  std::vector<int> couple_lookup() const;

  const Ranking& couple_pref(int couple) const { return couple_prefs.at(couple); }
  int pair(int hf, int hm) const { return pair_code(hf, hm, hospital_count()); }
};

enum class CoupleMember { F, M };

/// 1-based rank of x in pref; throws naming x when absent.
int rank(const Ranking& pref, int x);

/// Projection of a couple preference onto one member's hospitals, holding the
/// partner fixed at `partner_hospital`.  For proposer M the pairs
/// (partner_hospital, x) are scanned in preference order; for proposer F the
/// pairs (x, partner_hospital).  The result is a total order over H+none.
Ranking conditional_preference(const Ranking& couple_pref, int n_hospitals,
                               CoupleMember proposer, int partner_hospital);

/// Swap the two members of a couple: exchanges f/m and transposes the pair
/// preference accordingly.
void swap_couple_labels(MarketInstance& inst, int couple);

struct Matching {
  std::vector<int> seat;  // doctor -> hospital slot (none = unmatched)

  Matching() = default;
  Matching(int n_doctors, int none_slot) : seat(n_doctors, none_slot) {}

  int of(int doctor) const { return seat.at(doctor); }
  std::vector<std::vector<int>> rosters(const MarketInstance& inst) const;
  static Matching from_rosters(const MarketInstance& inst,
                               const std::vector<std::vector<int>>& rosters);
  bool respects_capacities(const MarketInstance& inst) const;
  bool everyone_matched(const MarketInstance& inst) const;
  bool operator==(const Matching&) const = default;
};

enum class ValidationMode { Strict, Permissive };

struct ValidationIssue {
  std::string code;
  std::string message;
  bool fatal = true;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool has_fatal() const;
  bool ok() const { return !has_fatal(); }
  void add(std::string code, std::string message, bool fatal);
};

/// Checks the model assumptions.  Structural invariants (partition of the
/// doctor set, completeness of rankings, none-last, matched-pairs-first) are
/// always fatal; in Permissive mode the cardinality assumptions
/// (|D| >= 4, |C| >= 1, sum of capacities = |D|) become warnings so
/// couple-free or padded markets can run.
ValidationReport validate_instance(const MarketInstance& inst, ValidationMode mode);

/// Canonical order for pairs with a none coordinate: lexicographic by the
/// f-coordinate rank in pf, then the m-coordinate rank in pm.  Used when a
/// couple preference file omits them.
std::vector<int> canonical_none_pairs(const Ranking& pf, const Ranking& pm,
                                      int n_hospitals);

}  // namespace stablecouples
