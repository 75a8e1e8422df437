#include "cantorlab/name.hpp"

#include <algorithm>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace detail {
struct NameNode {
  Name::Op op = Name::Op::Atom;
  std::vector<Clopen> prefix;
  TailRule tail = ZeroTail{};
  std::optional<Name> left;
  std::optional<Name> right;
  Clopen constant;
};
}  // namespace detail

namespace {

void check_bits(std::string_view bits) {
  for (char c : bits)
    if (c != '0' && c != '1') throw Error(ErrorKind::Parse, "pattern may contain only '0' and '1': " + std::string(bits));
}

const std::shared_ptr<const detail::NameNode>& zero_node() {
  static const auto node = std::make_shared<const detail::NameNode>();
  return node;
}

}  // namespace

Coord FreshLayout::block_start(std::uint64_t k) const {
  if (width == 0) throw Error(ErrorKind::Domain, "fresh block width must be positive");
  std::uint64_t start = std::uint64_t{reserve} + k * std::uint64_t{width};
  if (k > (std::uint64_t{1} << 32) || start + width >= UINT32_MAX)
    throw Error(ErrorKind::BoundExceeded, "fresh block " + std::to_string(k) + " lies beyond the coordinate range");
  return static_cast<Coord>(start);
}

bool incompatible(std::string_view s, std::string_view t) {
  std::size_t n = std::min(s.size(), t.size());
  return s.substr(0, n) != t.substr(0, n);
}

Clopen fresh_block(const Schedule& schedule, const FreshLayout& layout, std::uint64_t k) {
  Dyadic a = schedule.at(k);
  if (a.sign() < 0 || a > Dyadic(1)) throw Error(ErrorKind::Domain, "schedule value outside [0,1]: " + a.to_string());
  if (a.exponent() > layout.width)
    throw Error(ErrorKind::WidthBound, "schedule value " + a.to_string() + " at " + std::to_string(k) +
                                           " needs more than " + std::to_string(layout.width) + " coordinates");
  return Clopen::below(layout.block_start(k), a.exponent(), a.numerator());
}

Name::Name() : node_(zero_node()) {}

Name Name::atom(std::vector<Clopen> prefix, TailRule tail) {
  if (auto* s = std::get_if<SlidingPattern>(&tail)) check_bits(s->bits);
  if (auto* u = std::get_if<SlidingUnion>(&tail)) {
    for (std::size_t i = 0; i < u->patterns.size(); ++i) {
      check_bits(u->patterns[i]);
      for (std::size_t j = 0; j < i; ++j)
        if (!incompatible(u->patterns[i], u->patterns[j]))
          throw Error(ErrorKind::Domain,
                      "sliding union patterns must be pairwise incompatible: '" + u->patterns[j] + "', '" +
                          u->patterns[i] + "'");
    }
  }
  if (auto* f = std::get_if<FreshBlocks>(&tail)) fresh_block(f->schedule, f->layout, 0);
  if (auto* sp = std::get_if<Spliced>(&tail)) {
    std::size_t m = sp->cuts.interval_count();
    if (sp->pieces.empty() || (sp->pieces.size() != m && sp->pieces.size() + 1 != m))
      throw Error(ErrorKind::LengthMismatch, "splice over " + std::to_string(m) + " intervals needs " +
                                                 std::to_string(m - 1) + " or " + std::to_string(m) +
                                                 " names, got " + std::to_string(sp->pieces.size()));
  }
  auto node = std::make_shared<detail::NameNode>();
  node->prefix = std::move(prefix);
  node->tail = std::move(tail);
  return Name(std::move(node));
}

Name::Op Name::op() const { return node_->op; }
const std::vector<Clopen>& Name::prefix() const { return node_->prefix; }
const TailRule& Name::tail() const { return node_->tail; }

const Name& Name::left() const {
  if (!node_->left) throw Error(ErrorKind::TypeMismatch, "atom has no operands");
  return *node_->left;
}

const Name& Name::right() const {
  if (!node_->right) throw Error(ErrorKind::TypeMismatch, "node has no second operand");
  return *node_->right;
}

const Clopen& Name::constant() const { return node_->constant; }

Clopen Name::eval(std::uint64_t k) const {
  const detail::NameNode& n = *node_;
  switch (n.op) {
    case Op::Meet: return n.left->eval(k) & n.right->eval(k);
    case Op::Join: return n.left->eval(k) | n.right->eval(k);
    case Op::Complement: return ~n.left->eval(k);
    case Op::AndConst: return n.left->eval(k) & n.constant;
    case Op::Atom: break;
  }
  if (k < n.prefix.size()) return n.prefix[k];
  return std::visit(
      [k](const auto& t) -> Clopen {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ZeroTail>) {
          return Clopen::zero();
        } else if constexpr (std::is_same_v<T, OneTail>) {
          return Clopen::one();
        } else if constexpr (std::is_same_v<T, ConstantTail>) {
          return t.clopen;
        } else if constexpr (std::is_same_v<T, SlidingPattern>) {
          if (k + t.bits.size() >= UINT32_MAX) throw Error(ErrorKind::BoundExceeded, "offset beyond coordinate range");
          return Clopen::cylinder(static_cast<Coord>(k), t.bits);
        } else if constexpr (std::is_same_v<T, SlidingUnion>) {
          Clopen c;
          for (const auto& s : t.patterns) {
            if (k + s.size() >= UINT32_MAX) throw Error(ErrorKind::BoundExceeded, "offset beyond coordinate range");
            c |= Clopen::cylinder(static_cast<Coord>(k), s);
          }
          return c;
        } else if constexpr (std::is_same_v<T, IndicatorTail>) {
          return t.set.contains(k) ? Clopen::one() : Clopen::zero();
        } else if constexpr (std::is_same_v<T, FreshBlocks>) {
          return fresh_block(t.schedule, t.layout, k);
        } else {
          std::size_t i = std::min(t.cuts.index_of(k), t.pieces.size() - 1);
          return t.pieces[i].eval(k);
        }
      },
      n.tail);
}

namespace {

bool tails_equal(const TailRule& a, const TailRule& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, ZeroTail> || std::is_same_v<T, OneTail>) {
          return true;
        } else if constexpr (std::is_same_v<T, ConstantTail>) {
          return x.clopen == y.clopen;
        } else if constexpr (std::is_same_v<T, SlidingPattern>) {
          return x.bits == y.bits;
        } else if constexpr (std::is_same_v<T, SlidingUnion>) {
          return x.patterns == y.patterns;
        } else if constexpr (std::is_same_v<T, IndicatorTail>) {
          return x.set == y.set;
        } else if constexpr (std::is_same_v<T, FreshBlocks>) {
          return x.schedule == y.schedule && x.layout == y.layout;
        } else {
          if (!(x.cuts == y.cuts) || x.pieces.size() != y.pieces.size()) return false;
          for (std::size_t i = 0; i < x.pieces.size(); ++i)
            if (!x.pieces[i].structurally_equal(y.pieces[i])) return false;
          return true;
        }
      },
      a);
}

}  // namespace

bool Name::structurally_equal(const Name& other) const {
  if (node_ == other.node_) return true;
  const detail::NameNode& a = *node_;
  const detail::NameNode& b = *other.node_;
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Atom: return a.prefix == b.prefix && tails_equal(a.tail, b.tail);
    case Op::Meet:
    case Op::Join: return a.left->structurally_equal(*b.left) && a.right->structurally_equal(*b.right);
    case Op::Complement: return a.left->structurally_equal(*b.left);
    case Op::AndConst: return a.constant == b.constant && a.left->structurally_equal(*b.left);
  }
  return false;
}

Name pointwise(BoolOp op, const Name& m, const std::optional<Name>& n) {
  auto node = std::make_shared<detail::NameNode>();
  if (op == BoolOp::Complement) {
    if (n) throw Error(ErrorKind::Domain, "complement takes a single name");
    node->op = Name::Op::Complement;
    node->left = m;
    return Name(std::move(node));
  }
  if (!n) throw Error(ErrorKind::Domain, "binary operation needs two names");
  if (op == BoolOp::Diff) return pointwise(BoolOp::Meet, m, pointwise(BoolOp::Complement, *n));
  node->op = op == BoolOp::Meet ? Name::Op::Meet : Name::Op::Join;
  node->left = m;
  node->right = *n;
  return Name(std::move(node));
}

Name and_const(const Name& m, const Clopen& q) {
  auto node = std::make_shared<detail::NameNode>();
  node->op = Name::Op::AndConst;
  node->left = m;
  node->constant = q;
  return Name(std::move(node));
}

Name zero_name() { return Name::atom({}, ZeroTail{}); }
Name one_name() { return Name::atom({}, OneTail{}); }
Name constant_name(const Clopen& q) { return Name::atom({}, ConstantTail{q}); }
Name indicator_name(const EventuallyPeriodicSet& x) { return Name::atom({}, IndicatorTail{x}); }
Name sliding_name(std::string bits) { return Name::atom({}, SlidingPattern{std::move(bits)}); }
Name sliding_union_name(std::vector<std::string> patterns) {
  return Name::atom({}, SlidingUnion{std::move(patterns)});
}
Name fresh_name(const Schedule& schedule, FreshLayout layout) {
  return Name::atom({}, FreshBlocks{schedule, layout});
}
Name spliced_name(const IntervalPartition& cuts, std::vector<Name> pieces) {
  return Name::atom({}, Spliced{cuts, std::move(pieces)});
}

}  // namespace cantorlab
