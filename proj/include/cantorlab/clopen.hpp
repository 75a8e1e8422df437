#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cantorlab/dyadic.hpp"

namespace cantorlab {

/// A coordinate of the Cantor space 2^omega.
using Coord = std::uint32_t;

enum class BoolOp { Meet, Join, Diff, Complement };

/// A clopen subset of 2^omega.
///
/// Backed by a reduced ordered decision diagram (coordinates tested in
/// increasing order) in a process-wide hash-consed node table, so two
/// clopens denoting the same set are the same node and compare equal in
/// O(1). Values are immutable and safe to share between threads.
class Clopen {
 public:
  using NodeId = std::uint32_t;

  Clopen() = default;  // the empty set

  static Clopen zero() { return Clopen(kFalse); }
  static Clopen one() { return Clopen(kTrue); }
  static Clopen literal(Coord c, bool value);
  static Clopen var(Coord c) { return literal(c, true); }
  /// {x : x(offset+i) = bits[i] for i < |bits|}.
  static Clopen cylinder(Coord offset, std::string_view bits);
  /// {x : the bits x(first), ..., x(first+width-1), read as a binary
  /// number with the first coordinate most significant, are < bound}.
  /// Measure is bound / 2^width.
  static Clopen below(Coord first, std::uint32_t width, const BigInt& bound);
  /// Builds the function on `support` (strictly increasing) whose value at
  /// assignment a is table[a], where bit j of a is the value of support[j].
  static Clopen from_truth_table(std::span<const Coord> support, const std::vector<bool>& table);

  static Clopen parse(std::string_view text);

  bool is_zero() const noexcept { return id_ == kFalse; }
  bool is_one() const noexcept { return id_ == kTrue; }
  NodeId id() const noexcept { return id_; }

  /// Essential coordinates in increasing order.
  std::vector<Coord> support() const;
  std::optional<Coord> max_coord() const;
  Dyadic measure() const;
  bool leq(const Clopen& other) const;
  bool disjoint(const Clopen& other) const;
  bool contains(const std::function<bool(Coord)>& point) const;
  /// Cofactor: the set with coordinate c fixed to `value`.
  Clopen restrict(Coord c, bool value) const;
  std::size_t node_count() const;

  /// Cuts the diagram at `bound`: every node testing a coordinate > bound
  /// (and every terminal) reachable through nodes testing coordinates <=
  /// bound is a frontier node. Frontier nodes are returned in a
  /// deterministic order.
  std::vector<Clopen> frontier(Coord bound) const;
  /// Replaces every frontier node (see frontier) with 1 if keep(node) and
  /// with 0 otherwise; the result depends only on coordinates <= bound.
  Clopen collapse(Coord bound, const std::function<bool(const Clopen&)>& keep) const;

  std::string to_string() const;

  friend Clopen operator&(const Clopen& a, const Clopen& b);
  friend Clopen operator|(const Clopen& a, const Clopen& b);
  friend Clopen operator-(const Clopen& a, const Clopen& b);
  friend Clopen operator~(const Clopen& a);
  Clopen& operator&=(const Clopen& o) { return *this = *this & o; }
  Clopen& operator|=(const Clopen& o) { return *this = *this | o; }

  friend bool operator==(const Clopen& a, const Clopen& b) noexcept { return a.id_ == b.id_; }
  friend bool operator<(const Clopen& a, const Clopen& b) noexcept { return a.id_ < b.id_; }

  // Node-level access for traversals.
  static constexpr NodeId kFalse = 0;
  static constexpr NodeId kTrue = 1;
  struct NodeView {
    Coord var;
    NodeId lo;
    NodeId hi;
  };
  static NodeView node(NodeId id);
  static Clopen from_id(NodeId id) { return Clopen(id); }
  static Clopen make(Coord var, const Clopen& lo, const Clopen& hi);

 private:
  explicit Clopen(NodeId id) : id_(id) {}
  NodeId id_ = kFalse;
};

Clopen apply_bool(BoolOp op, const Clopen& c, const std::optional<Clopen>& d = std::nullopt);

/// Lazily yields every clopen whose support is contained in `support`, each
/// exactly once, ordered by truth table read as a binary number.
class ClopenEnumerator {
 public:
  static constexpr std::size_t kDefaultBound = 8;

  explicit ClopenEnumerator(std::vector<Coord> support, std::size_t bound = kDefaultBound);

  std::optional<Clopen> next();
  /// Total number of clopens in the stream, 2^(2^|support|).
  BigInt size() const;

 private:
  std::vector<Coord> support_;
  std::vector<bool> table_;
  bool done_ = false;
};

std::vector<Clopen> enumerate_clopens(std::vector<Coord> support, std::size_t limit = SIZE_MAX,
                                      std::size_t bound = ClopenEnumerator::kDefaultBound);

}  // namespace cantorlab

template <>
struct std::hash<cantorlab::Clopen> {
  std::size_t operator()(const cantorlab::Clopen& c) const noexcept { return c.id(); }
};
