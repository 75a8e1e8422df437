#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cantorlab/clopen.hpp"
#include "cantorlab/interval_partition.hpp"
#include "cantorlab/periodic_set.hpp"
#include "cantorlab/schedule.hpp"

namespace cantorlab {

/// Placement of independent coordinate blocks: block k starts at
/// reserve + k*width and uses as many coordinates as the value a_k needs
/// (at most width). The range [0, reserve) is left to user clopens.
struct FreshLayout {
  Coord reserve = 64;
  std::uint32_t width = 32;

  Coord block_start(std::uint64_t k) const;
  friend bool operator==(const FreshLayout&, const FreshLayout&) = default;
};

class Name;

struct ZeroTail {};
struct OneTail {};
struct ConstantTail {
  Clopen clopen;
};
/// k -> cylinder(k, bits).
struct SlidingPattern {
  std::string bits;
};
/// k -> join of cylinder(k, s) over pairwise incompatible patterns s.
struct SlidingUnion {
  std::vector<std::string> patterns;
};
/// k -> 1 if k is in the set, else 0.
struct IndicatorTail {
  EventuallyPeriodicSet set;
};
/// k -> a clopen of measure a_k on block k of the layout.
struct FreshBlocks {
  Schedule schedule;
  FreshLayout layout;
};
/// k -> pieces[n](k) for k in interval n; the last piece also covers every
/// later interval.
struct Spliced {
  IntervalPartition cuts;
  std::vector<Name> pieces;
};

using TailRule =
    std::variant<ZeroTail, OneTail, ConstantTail, SlidingPattern, SlidingUnion, IndicatorTail, FreshBlocks, Spliced>;

namespace detail {
struct NameNode;
}

/// A finitely described sequence k -> M(k) of clopens.
///
/// Names are immutable expression trees whose leaves are atoms (a finite
/// prefix of clopens followed by a tail rule) and whose inner nodes are
/// pointwise Boolean operations. Copies share structure.
class Name {
 public:
  enum class Op { Atom, Meet, Join, Complement, AndConst };

  /// The zero name.
  Name();

  /// Validates the tail rule (pattern alphabet, antichain property, splice
  /// lengths, first fresh value within the block width).
  static Name atom(std::vector<Clopen> prefix, TailRule tail);

  Op op() const;
  const std::vector<Clopen>& prefix() const;
  const TailRule& tail() const;
  /// Operands: Meet/Join use both, Complement and AndConst only left().
  const Name& left() const;
  const Name& right() const;
  /// The clopen of an AndConst node.
  const Clopen& constant() const;

  Clopen eval(std::uint64_t k) const;

  bool structurally_equal(const Name& other) const;

  friend Name pointwise(BoolOp op, const Name& m, const std::optional<Name>& n);
  friend Name and_const(const Name& m, const Clopen& q);

 private:
  explicit Name(std::shared_ptr<const detail::NameNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::NameNode> node_;
};

Name zero_name();
Name one_name();
/// k -> q.
Name constant_name(const Clopen& q);
/// k -> 1 if k in x, else 0.
Name indicator_name(const EventuallyPeriodicSet& x);
Name sliding_name(std::string bits);
Name sliding_union_name(std::vector<std::string> patterns);
Name fresh_name(const Schedule& schedule, FreshLayout layout = {});
/// Accepts as many pieces as intervals, or one fewer (the last piece then
/// also fills the unbounded interval).
Name spliced_name(const IntervalPartition& cuts, std::vector<Name> pieces);

/// The clopen of block k: below(block_start(k), w_k, m_k) for a_k = m_k/2^w_k.
/// Throws WidthBound when w_k exceeds the layout width.
Clopen fresh_block(const Schedule& schedule, const FreshLayout& layout, std::uint64_t k);

/// Coordinate-wise Boolean operation; n must be absent exactly for complement.
Name pointwise(BoolOp op, const Name& m, const std::optional<Name>& n = std::nullopt);
Name and_const(const Name& m, const Clopen& q);

/// Neither string is a prefix of the other.
bool incompatible(std::string_view s, std::string_view t);

}  // namespace cantorlab
