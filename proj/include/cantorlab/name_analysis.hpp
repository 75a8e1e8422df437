#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantorlab/name.hpp"

namespace cantorlab {

/// What a name does for large k.
///
/// Beyond `threshold` every atom of the name is in its tail rule, and M(k)
/// is a fixed Boolean combination of: clopens on the `fixed` coordinates,
/// cylinders inside the window [k, k + slide_length), the fresh block k,
/// and the answers "k in X" for the `indicators`. Those answers repeat with
/// `period`; the fresh values are constant beyond the threshold unless
/// `open_fresh` is set.
struct TailShape {
  bool analyzable = false;
  std::string reason;
  std::uint64_t threshold = 0;
  std::vector<Coord> fixed;
  std::uint32_t slide_length = 0;
  std::optional<FreshLayout> layout;
  std::vector<Schedule> fresh;
  bool open_fresh = false;
  std::vector<EventuallyPeriodicSet> indicators;
  std::uint64_t period = 1;

  bool has_sliding() const { return slide_length > 0; }
  bool has_fresh() const { return !fresh.empty(); }
  /// Distinct indices can touch overlapping coordinates (sliding windows
  /// meeting earlier fresh blocks), so independence across k is lost.
  bool mixed() const { return has_sliding() && has_fresh(); }
};

inline constexpr std::uint64_t kMaxRegimePeriod = 4096;

TailShape tail_shape(const Name& m);

/// One representative index per residue class of the regime period.
///
/// For k >= start, measures of M(k) meet B with support(B) inside the
/// fixed coordinates, and zero tests of such meets, depend only on the
/// residue of k (and, for an open fresh schedule, on a_k; zero tests do
/// not).
struct Regimes {
  std::uint64_t start = 0;
  std::uint64_t period = 1;
  std::vector<std::uint64_t> reps;                // reps[r] = least k >= start with k = r mod period
  std::vector<EventuallyPeriodicSet> queries;     // indicator sets, then extra sets
  std::vector<std::vector<bool>> answers;         // answers[r][i] = reps[r] in queries[i]
  Coord fixed_bound = 0;                          // max fixed coordinate, if any
  bool has_fixed = false;

  std::uint64_t residue(std::uint64_t k) const { return k % period; }
};

/// Throws UnsupportedName when the shape is not analyzable or the period
/// grows beyond kMaxRegimePeriod. `extra_fixed` joins the fixed
/// coordinates; `extra_sets` are refined into the regimes as well.
Regimes regimes(const TailShape& shape, std::span<const Coord> extra_fixed = {},
                std::span<const EventuallyPeriodicSet> extra_sets = {});

/// Shape of several names read together (as if joined).
TailShape combined_shape(std::span<const Name> names);

enum class LeqKind { Always, Eventually, No, Unknown };

struct LeqVerdict {
  LeqKind kind = LeqKind::Unknown;
  std::string proof;            // rule that justified Always / Eventually
  std::uint64_t threshold = 0;  // Eventually: M(k) <= N(k) for all k >= threshold
  std::uint64_t witness = 0;    // No: least k with M(k) not below N(k)
  std::string reason;           // Unknown
};

std::string_view to_string(LeqKind kind);

/// Decides M(k) <= N(k) for almost all k on the analyzable fragment.
LeqVerdict leq_name(const Name& m, const Name& n, std::uint64_t window);

enum class FinitenessKind { ForcedFinite, ForcedInfinite, Unknown };

struct WindowSample {
  std::uint64_t from = 0;  // window is (from, from + width]
  Dyadic measure;
};

struct FinitenessVerdict {
  FinitenessKind kind = FinitenessKind::Unknown;
  std::uint64_t bound = 0;  // ForcedFinite: M(k) = 0 for k >= bound
  /// ForcedInfinite: every window (l, l + window] with l >= valid_from has a
  /// join of measure >= evidence.
  Dyadic evidence;
  std::uint64_t valid_from = 0;
  std::uint64_t spacing = 0;
  std::uint64_t count = 0;
  std::vector<WindowSample> samples;
  std::string reason;
};

std::string_view to_string(FinitenessKind kind);

FinitenessVerdict finiteness_certificate(const Name& m, std::uint64_t window);

/// Least t such that pred(k) holds for all k >= t, given that it holds for
/// every k >= start: scans downward from start.
std::uint64_t settle_index(std::uint64_t start, const std::function<bool(std::uint64_t)>& pred);

}  // namespace cantorlab
