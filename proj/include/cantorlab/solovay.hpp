#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantorlab/name.hpp"
#include "cantorlab/name_analysis.hpp"

namespace cantorlab {

/// A limit that provably holds: the sequence equals `value` at every
/// k >= stabilization_index. When `along` is set the claim is restricted
/// to the indices in that set (the limit was taken along a filter).
struct ExactValue {
  Dyadic value;
  std::uint64_t stabilization_index = 0;
  std::optional<EventuallyPeriodicSet> along;
};

/// Bounds on the sampled values at k in [from, from + window).
struct IntervalValue {
  Dyadic lo;
  Dyadic hi;
  std::uint64_t from = 0;
  std::uint64_t window = 0;
  std::string reason;
};

/// The limit depends on which of the query sets belong to the ultrafilter.
/// Each branch lists one answer per query; branches cover every answer
/// vector that occurs on a tail of omega.
struct ConditionalValue {
  struct Branch {
    std::vector<bool> answers;
    ExactValue value;
  };
  std::vector<EventuallyPeriodicSet> queries;
  std::vector<Branch> branches;
};

class MeasureValue {
 public:
  enum class Kind { Exact, Interval, Conditional };

  MeasureValue(ExactValue v) : v_(std::move(v)) {}        // NOLINT(google-explicit-constructor)
  MeasureValue(IntervalValue v) : v_(std::move(v)) {}     // NOLINT(google-explicit-constructor)
  MeasureValue(ConditionalValue v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_exact() const { return kind() == Kind::Exact; }
  const ExactValue& exact() const;
  const IntervalValue& interval() const;
  const ConditionalValue& conditional() const;

 private:
  std::variant<ExactValue, IntervalValue, ConditionalValue> v_;
};

std::string_view to_string(MeasureValue::Kind kind);

/// Maximum number of oracle queries a conditional value may branch on.
inline constexpr std::size_t kMaxBranchQueries = 4;

/// A piecewise constant function on 2^omega: cells partition the space,
/// sorted by value, one cell per distinct value.
struct Density {
  std::vector<Clopen> cells;
  std::vector<Dyadic> values;

  static Density constant(const Dyadic& v);
  /// Merges equal values, drops empty cells and sorts by value.
  static Density from_cells(std::vector<std::pair<Dyadic, Clopen>> cells);

  Dyadic integral(const Clopen& b) const;
  std::optional<Dyadic> constant_value() const;
  Dyadic max_value() const;

  friend bool operator==(const Density&, const Density&) = default;
};

struct ConditionalDensity {
  struct Branch {
    std::vector<bool> answers;
    Density density;
  };
  std::vector<EventuallyPeriodicSet> queries;
  std::vector<Branch> branches;
};

using DensityResult = std::variant<Density, ConditionalDensity>;

/// Pattern names: k -> cylinder(k, s); the empty pattern gives the constant 1.
Name make_Ms(const std::string& s);

/// The dyadic-interval decomposition of [0, alpha) truncated at `depth`:
/// for every 1 bit at position i of alpha's binary expansion, the string
/// b_1 ... b_{i-1} 0.
std::vector<std::string> dyadic_antichain(const Rational& alpha, std::uint32_t depth);
Name make_Malpha(const Rational& alpha, std::uint32_t depth);

/// lim_k measure(M(k) & B), certified on the analyzable fragment; an
/// Interval over [start, start + window) otherwise.
MeasureValue tail_limit(const Name& m, const Clopen& b, std::uint64_t window = 64);

/// Throws UnsupportedName outside the analyzable fragment.
DensityResult density(const Name& m);
/// Density of an unconditional result; throws UnsupportedName for a
/// conditional one.
Density unconditional_density(const Name& m);

/// d1 <= d2 on every cell pair of positive measure.
bool density_leq(const Density& d1, const Density& d2);

inline constexpr std::uint32_t kDefaultPartitionBound = 8;

/// {M_s : s in 2^n} in lexicographic order.
std::vector<Name> partition_family(std::uint32_t n, std::uint32_t bound = kDefaultPartitionBound);

/// Groups per-residue values of a regime table into an exact or
/// conditional limit. `at` evaluates the sequence at any index.
MeasureValue limit_from_regimes(const Regimes& reg, const std::vector<Dyadic>& values,
                                const std::function<Dyadic(std::uint64_t)>& at);

}  // namespace cantorlab
