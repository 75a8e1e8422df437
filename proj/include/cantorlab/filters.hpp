#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantorlab/name.hpp"
#include "cantorlab/name_analysis.hpp"
#include "cantorlab/solovay.hpp"

namespace cantorlab {

/// A point of the profinite completion of the integers, given by its
/// residues r_n modulo n!. It decides membership for eventually periodic
/// sets: X belongs iff X is infinite and the point's residue modulo the
/// period of X is one of X's residues.
class ProfiniteThread {
 public:
  enum class Kind { Zero, Integer, FactorialDigits };

  ProfiniteThread() = default;
  static ProfiniteThread zero() { return {}; }
  /// The image of an ordinary integer (negative values allowed).
  static ProfiniteThread integer(BigInt a);
  /// sum_i digits[i-1] * i! with 0 <= digits[i-1] <= i; later digits are zero.
  static ProfiniteThread factorial_digits(std::vector<std::uint64_t> digits);

  /// zero | int:<a> | digits:<d1>,<d2>,...
  static ProfiniteThread parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  /// The point's residue modulo p (p > 0).
  std::uint64_t residue(std::uint64_t p) const;
  /// r_n, the residue modulo n! (n <= 20).
  std::uint64_t factorial_residue(std::uint32_t n) const;

 private:
  Kind kind_ = Kind::Zero;
  BigInt integer_ = 0;
  std::vector<std::uint64_t> digits_;
};

bool oracle_member(const ProfiniteThread& t, const EventuallyPeriodicSet& x);

/// k -> value on each level set; the level sets must partition omega.
using StepSequence = std::vector<std::pair<Dyadic, EventuallyPeriodicSet>>;

/// Throws MalformedSequence when the level sets overlap or miss an index.
Dyadic limit_along(const ProfiniteThread& t, const StepSequence& v);

/// The sequence k -> measure(M(k)) as a step sequence, for names whose
/// tail measures are governed by indicator answers.
StepSequence measure_steps(const Name& m);

Name fresh_independent(const Schedule& schedule, FreshLayout layout = {});

/// measure of the join of M(k) over k in X with n < k <= N, for a bare
/// fresh-block name: 1 - prod (1 - a_k).
Dyadic prefix_join_measure(const Name& m, const EventuallyPeriodicSet& x, std::uint64_t n, std::uint64_t big_n);

class BorelCantelliVerdict {
 public:
  enum class Kind { Convergent, Divergent };

  Kind kind() const { return kind_; }
  const std::string& rule() const { return rule_; }
  /// Convergent: an upper bound on sum_{k in X, k > n} a_k.
  Dyadic tail_bound(std::uint64_t n) const;
  /// Divergent: least N >= base with prod_{k in X, base < k <= N} (1 - a_k) <= eps.
  std::uint64_t certificate(const Dyadic& eps, std::uint64_t base = 0) const;

  const Schedule& schedule() const { return schedule_; }
  const EventuallyPeriodicSet& set() const { return set_; }

 private:
  friend BorelCantelliVerdict borel_cantelli_verdict(const Schedule&, const EventuallyPeriodicSet&);

  Kind kind_ = Kind::Convergent;
  std::string rule_;
  Schedule schedule_;
  EventuallyPeriodicSet set_;
};

std::string_view to_string(BorelCantelliVerdict::Kind kind);

/// Throws Unclassifiable for explicit schedules without a tail rule.
BorelCantelliVerdict borel_cantelli_verdict(const Schedule& schedule, const EventuallyPeriodicSet& x);

/// nu(M) = lim along the thread of measure(M(k)).
MeasureValue nu(const Name& m, const ProfiniteThread& t, std::uint64_t window = 64);

struct Ap1Report {
  std::vector<Dyadic> limits;                 // r_n
  std::vector<EventuallyPeriodicSet> near;    // U_n
  EventuallyPeriodicSet common;               // intersection of the U_n
  std::vector<std::uint64_t> cuts;            // l_n
  std::vector<LeqVerdict> chain;              // leq(M_{n+1}, M_n)
  std::vector<LeqVerdict> below;              // leq(M, M_n)
  std::vector<Dyadic> window_values;          // measure(M(k)) for k < window
  std::vector<std::int64_t> segment;          // n_k for k < window, -1 before l_0
  Dyadic final_value;
  std::string note;
};

struct Ap1Result {
  Name name;
  Ap1Report report;
};

/// Splices a pointwise decreasing chain M_0 >= M_1 >= ... >= M_T into one
/// name that is eventually below each M_n and whose measures follow the
/// limits r_n = nu(M_n).
Ap1Result ap1_diagonalize(const std::vector<Name>& chain, const ProfiniteThread& t, std::uint64_t window = 64);

}  // namespace cantorlab
