#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cantorlab {

/// Decomposition of omega into consecutive intervals given by strictly
/// increasing cuts c_0 = 0 < c_1 < ... < c_m: I_n = [c_n, c_{n+1} - 1] for
/// n < m, and the final interval I_m = [c_m, infinity).
class IntervalPartition {
 public:
  IntervalPartition() : cuts_{0} {}
  explicit IntervalPartition(std::vector<std::uint64_t> cuts);

  static IntervalPartition parse(std::string_view text);  // "0,3,7,15"
  std::string to_string() const;

  const std::vector<std::uint64_t>& cuts() const { return cuts_; }
  /// Number of intervals including the unbounded last one.
  std::size_t interval_count() const { return cuts_.size(); }
  std::uint64_t last_cut() const { return cuts_.back(); }
  /// Index n with k in I_n.
  std::size_t index_of(std::uint64_t k) const;

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

 private:
  std::vector<std::uint64_t> cuts_;
};

}  // namespace cantorlab
