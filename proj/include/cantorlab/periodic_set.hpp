#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cantorlab {

/// A subset of omega that agrees, from some threshold on, with a union of
/// residue classes modulo a period.
///
/// Construction canonicalizes: the period is the least period of the tail
/// pattern and the threshold is then the least one that still describes
/// the set, so equal sets have equal records.
class EventuallyPeriodicSet {
 public:
  /// The empty set.
  EventuallyPeriodicSet() = default;

  /// `exceptions` are the members below `threshold`; `residues` are taken
  /// modulo `period` (> 0).
  static EventuallyPeriodicSet make(std::uint64_t threshold, std::vector<std::uint64_t> exceptions,
                                    std::uint64_t period, std::vector<std::uint64_t> residues);

  static EventuallyPeriodicSet all() { return make(0, {}, 1, {0}); }
  static EventuallyPeriodicSet empty() { return {}; }
  static EventuallyPeriodicSet finite(std::vector<std::uint64_t> members);
  static EventuallyPeriodicSet residue_class(std::uint64_t period, std::uint64_t residue);
  /// [from, infinity).
  static EventuallyPeriodicSet tail_from(std::uint64_t from);

  /// Text forms: all, empty, evens, odds, from:<t>, finite:<a,b,...>,
  /// mod<p>:<r,...>, and the general eps:T=<t>;E=<...>;p=<p>;R=<...>.
  static EventuallyPeriodicSet parse(std::string_view text);
  std::string to_string() const;

  bool contains(std::uint64_t k) const;
  bool is_finite() const { return residues_.empty(); }
  bool is_cofinite() const { return period_ == 1 && residues_.size() == 1; }
  /// Least member >= k, if any.
  std::optional<std::uint64_t> next_member(std::uint64_t k) const;

  EventuallyPeriodicSet complement() const;
  EventuallyPeriodicSet intersect(const EventuallyPeriodicSet& o) const;
  EventuallyPeriodicSet unite(const EventuallyPeriodicSet& o) const;
  bool subset_of(const EventuallyPeriodicSet& o) const;

  std::uint64_t threshold() const { return threshold_; }
  const std::vector<std::uint64_t>& exceptions() const { return exceptions_; }
  std::uint64_t period() const { return period_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  friend bool operator==(const EventuallyPeriodicSet&, const EventuallyPeriodicSet&) = default;
  friend auto operator<=>(const EventuallyPeriodicSet&, const EventuallyPeriodicSet&) = default;

 private:
  bool in_tail(std::uint64_t k) const;

  std::uint64_t threshold_ = 0;
  std::vector<std::uint64_t> exceptions_;  // sorted members below threshold_
  std::uint64_t period_ = 1;
  std::vector<std::uint64_t> residues_;  // sorted, each < period_
};

}  // namespace cantorlab
