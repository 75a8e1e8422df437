#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantorlab/dyadic.hpp"

namespace cantorlab {

/// A rule k -> a_k of dyadic values in [0, 1], from a closed set of kinds
/// whose summability is known in closed form.
class Schedule {
 public:
  enum class Kind { Constant, PowerDecay, Geometric, Explicit };

  static Schedule constant(Dyadic a);
  /// a_k = 2^-floor(log2(k+1)).
  static Schedule power_decay();
  /// a_k = 2^(-k-c).
  static Schedule geometric(std::uint32_t c);
  /// a_k = head[k] for k < |head|, then tail(k) when a tail rule is given.
  static Schedule explicit_list(std::vector<Dyadic> head, std::optional<Schedule> tail = std::nullopt);

  /// const(<a>), power, geom(<c>), explicit(<a0>,<a1>,...[;tail=<schedule>]).
  static Schedule parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  /// Throws Domain when k lies beyond an explicit list without a tail rule.
  Dyadic at(std::uint64_t k) const;

  /// Least index from which the sequence is constant, when it provably is.
  std::optional<std::uint64_t> constant_from() const;
  /// Index from which every value lies strictly between 0 and 1, for the
  /// kinds that are not eventually constant.
  std::optional<std::uint64_t> open_from() const;
  bool has_tail_rule() const;

  const Dyadic& constant_value() const { return value_; }
  std::uint32_t geometric_offset() const { return offset_; }
  const std::vector<Dyadic>& head() const { return head_; }
  const Schedule* tail() const { return tail_.get(); }

  friend bool operator==(const Schedule& a, const Schedule& b);

 private:
  Kind kind_ = Kind::Constant;
  Dyadic value_;
  std::uint32_t offset_ = 0;
  std::vector<Dyadic> head_;
  std::shared_ptr<const Schedule> tail_;
};

}  // namespace cantorlab
