#include "cantorlab/clopen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

constexpr Coord kTerminalVar = UINT32_MAX;

struct Node {
  Coord var;
  Clopen::NodeId lo;
  Clopen::NodeId hi;
};

struct NodeKey {
  Coord var;
  Clopen::NodeId lo;
  Clopen::NodeId hi;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::uint64_t h = k.var;
    h = h * 0x9E3779B97F4A7C15ULL + k.lo;
    h = h * 0x9E3779B97F4A7C15ULL + k.hi;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Append-only node store. Nodes live in fixed-size chunks that never move,
// so readers index without locking; only insertion takes the mutex.
class NodeTable {
 public:
  static constexpr unsigned kChunkBits = 16;
  static constexpr std::uint32_t kChunkSize = 1u << kChunkBits;
  static constexpr std::uint32_t kMaxChunks = 1u << 14;

  NodeTable() {
    for (auto& c : chunks_) c.store(nullptr, std::memory_order_relaxed);
    std::lock_guard lock(mu_);
    push_locked({kTerminalVar, 0, 0});
    push_locked({kTerminalVar, 1, 1});
  }

  const Node& get(Clopen::NodeId id) const {
    const Node* chunk = chunks_[id >> kChunkBits].load(std::memory_order_acquire);
    return chunk[id & (kChunkSize - 1)];
  }

  Clopen::NodeId make(Coord var, Clopen::NodeId lo, Clopen::NodeId hi) {
    if (lo == hi) return lo;
    NodeKey key{var, lo, hi};
    std::lock_guard lock(mu_);
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    Clopen::NodeId id = push_locked({var, lo, hi});
    unique_.emplace(key, id);
    return id;
  }

 private:
  Clopen::NodeId push_locked(const Node& n) {
    std::uint32_t id = size_;
    std::uint32_t chunk = id >> kChunkBits;
    if (chunk >= kMaxChunks) throw Error(ErrorKind::BoundExceeded, "clopen node table exhausted");
    Node* data = chunks_[chunk].load(std::memory_order_relaxed);
    if (data == nullptr) {
      storage_.push_back(std::make_unique<Node[]>(kChunkSize));
      data = storage_.back().get();
      chunks_[chunk].store(data, std::memory_order_release);
    }
    data[id & (kChunkSize - 1)] = n;
    ++size_;
    return id;
  }

  std::array<std::atomic<Node*>, kMaxChunks> chunks_;
  std::vector<std::unique_ptr<Node[]>> storage_;
  std::uint32_t size_ = 0;
  std::mutex mu_;
  std::unordered_map<NodeKey, Clopen::NodeId, NodeKeyHash> unique_;
};

NodeTable& table() {
  static NodeTable t;
  return t;
}

bool is_terminal(Clopen::NodeId id) { return id <= Clopen::kTrue; }

using Memo = std::unordered_map<std::uint64_t, Clopen::NodeId>;

std::uint64_t pair_key(Clopen::NodeId a, Clopen::NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

Clopen::NodeId negate(Clopen::NodeId a, std::unordered_map<Clopen::NodeId, Clopen::NodeId>& memo) {
  if (a == Clopen::kFalse) return Clopen::kTrue;
  if (a == Clopen::kTrue) return Clopen::kFalse;
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  const Node n = table().get(a);
  Clopen::NodeId r = table().make(n.var, negate(n.lo, memo), negate(n.hi, memo));
  memo.emplace(a, r);
  return r;
}

Clopen::NodeId negate(Clopen::NodeId a) {
  std::unordered_map<Clopen::NodeId, Clopen::NodeId> memo;
  return negate(a, memo);
}

Clopen::NodeId apply(BoolOp op, Clopen::NodeId a, Clopen::NodeId b, Memo& memo) {
  switch (op) {
    case BoolOp::Meet:
      if (a == Clopen::kFalse || b == Clopen::kFalse) return Clopen::kFalse;
      if (a == Clopen::kTrue) return b;
      if (b == Clopen::kTrue || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case BoolOp::Join:
      if (a == Clopen::kTrue || b == Clopen::kTrue) return Clopen::kTrue;
      if (a == Clopen::kFalse) return b;
      if (b == Clopen::kFalse || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case BoolOp::Diff:
      if (a == Clopen::kFalse || b == Clopen::kTrue || a == b) return Clopen::kFalse;
      if (b == Clopen::kFalse) return a;
      if (a == Clopen::kTrue) return negate(b);
      break;
    case BoolOp::Complement:
      return negate(a);
  }
  std::uint64_t key = pair_key(a, b);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const Node na = table().get(a);
  const Node nb = table().get(b);
  Coord v = std::min(na.var, nb.var);
  Clopen::NodeId alo = na.var == v ? na.lo : a;
  Clopen::NodeId ahi = na.var == v ? na.hi : a;
  Clopen::NodeId blo = nb.var == v ? nb.lo : b;
  Clopen::NodeId bhi = nb.var == v ? nb.hi : b;
  Clopen::NodeId lo = apply(op, alo, blo, memo);
  Clopen::NodeId hi = apply(op, ahi, bhi, memo);
  Clopen::NodeId r = table().make(v, lo, hi);
  memo.emplace(key, r);
  return r;
}

Clopen::NodeId apply(BoolOp op, Clopen::NodeId a, Clopen::NodeId b) {
  Memo memo;
  return apply(op, a, b, memo);
}

}  // namespace

Clopen::NodeView Clopen::node(NodeId id) {
  const Node& n = table().get(id);
  return {n.var, n.lo, n.hi};
}

Clopen Clopen::make(Coord var, const Clopen& lo, const Clopen& hi) {
  if (var == kTerminalVar) throw Error(ErrorKind::Domain, "coordinate out of range");
  auto check = [var](const Clopen& c) {
    if (!is_terminal(c.id_) && table().get(c.id_).var <= var)
      throw Error(ErrorKind::Domain, "decision node children must test larger coordinates");
  };
  check(lo);
  check(hi);
  return Clopen(table().make(var, lo.id_, hi.id_));
}

Clopen Clopen::literal(Coord c, bool value) {
  return value ? Clopen(table().make(c, kFalse, kTrue)) : Clopen(table().make(c, kTrue, kFalse));
}

Clopen Clopen::cylinder(Coord offset, std::string_view bits) {
  NodeId r = kTrue;
  for (std::size_t i = bits.size(); i-- > 0;) {
    Coord v = offset + static_cast<Coord>(i);
    if (bits[i] == '1') {
      r = table().make(v, kFalse, r);
    } else if (bits[i] == '0') {
      r = table().make(v, r, kFalse);
    } else {
      throw Error(ErrorKind::Parse, "bit string may contain only '0' and '1'");
    }
  }
  return Clopen(r);
}

Clopen Clopen::below(Coord first, std::uint32_t width, const BigInt& bound) {
  if (bound <= 0) return zero();
  if (bound >= (BigInt(1) << width)) return one();
  NodeId r = kFalse;
  for (std::uint32_t j = width; j-- > 0;) {
    bool bit = boost::multiprecision::bit_test(bound, width - 1 - j);
    Coord v = first + j;
    r = bit ? table().make(v, kTrue, r) : table().make(v, r, kFalse);
  }
  return Clopen(r);
}

Clopen Clopen::from_truth_table(std::span<const Coord> support, const std::vector<bool>& table_bits) {
  const std::size_t n = support.size();
  if (n > 24) throw Error(ErrorKind::BoundExceeded, "truth table support too large");
  if (table_bits.size() != (std::size_t{1} << n))
    throw Error(ErrorKind::Domain, "truth table size does not match support");
  for (std::size_t j = 1; j < n; ++j)
    if (support[j] <= support[j - 1]) throw Error(ErrorKind::Domain, "support must be strictly increasing");
  std::function<NodeId(std::size_t, std::size_t)> build = [&](std::size_t j, std::size_t a) -> NodeId {
    if (j == n) return table_bits[a] ? kTrue : kFalse;
    NodeId lo = build(j + 1, a);
    NodeId hi = build(j + 1, a | (std::size_t{1} << j));
    return table().make(support[j], lo, hi);
  };
  return Clopen(build(0, 0));
}

std::vector<Coord> Clopen::support() const {
  std::set<Coord> vars;
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack{id_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (is_terminal(id) || !seen.insert(id).second) continue;
    const Node& n = table().get(id);
    vars.insert(n.var);
    stack.push_back(n.lo);
    stack.push_back(n.hi);
  }
  return {vars.begin(), vars.end()};
}

std::optional<Coord> Clopen::max_coord() const {
  auto s = support();
  if (s.empty()) return std::nullopt;
  return s.back();
}

Dyadic Clopen::measure() const {
  std::unordered_map<NodeId, Dyadic> memo;
  std::function<Dyadic(NodeId)> rec = [&](NodeId id) -> Dyadic {
    if (id == kFalse) return Dyadic(0);
    if (id == kTrue) return Dyadic(1);
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node n = table().get(id);
    Dyadic m = (rec(n.lo) + rec(n.hi)).half();
    memo.emplace(id, m);
    return m;
  };
  return rec(id_);
}

bool Clopen::leq(const Clopen& other) const { return apply(BoolOp::Diff, id_, other.id_) == kFalse; }

bool Clopen::disjoint(const Clopen& other) const { return apply(BoolOp::Meet, id_, other.id_) == kFalse; }

bool Clopen::contains(const std::function<bool(Coord)>& point) const {
  NodeId id = id_;
  while (!is_terminal(id)) {
    const Node& n = table().get(id);
    id = point(n.var) ? n.hi : n.lo;
  }
  return id == kTrue;
}

Clopen Clopen::restrict(Coord c, bool value) const {
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (is_terminal(id)) return id;
    const Node n = table().get(id);
    if (n.var > c) return id;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    NodeId r = n.var == c ? (value ? n.hi : n.lo) : table().make(n.var, rec(n.lo), rec(n.hi));
    memo.emplace(id, r);
    return r;
  };
  return Clopen(rec(id_));
}

std::size_t Clopen::node_count() const {
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack{id_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second || is_terminal(id)) continue;
    const Node& n = table().get(id);
    stack.push_back(n.lo);
    stack.push_back(n.hi);
  }
  return seen.size();
}

std::vector<Clopen> Clopen::frontier(Coord bound) const {
  std::vector<Clopen> out;
  std::unordered_set<NodeId> seen;
  std::function<void(NodeId)> rec = [&](NodeId id) {
    if (!seen.insert(id).second) return;
    if (is_terminal(id) || table().get(id).var > bound) {
      out.push_back(Clopen(id));
      return;
    }
    const Node n = table().get(id);
    rec(n.lo);
    rec(n.hi);
  };
  rec(id_);
  return out;
}

Clopen Clopen::collapse(Coord bound, const std::function<bool(const Clopen&)>& keep) const {
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId id) -> NodeId {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    NodeId r;
    if (is_terminal(id) || table().get(id).var > bound) {
      r = keep(Clopen(id)) ? kTrue : kFalse;
    } else {
      const Node n = table().get(id);
      r = table().make(n.var, rec(n.lo), rec(n.hi));
    }
    memo.emplace(id, r);
    return r;
  };
  return Clopen(rec(id_));
}

Clopen operator&(const Clopen& a, const Clopen& b) { return Clopen(apply(BoolOp::Meet, a.id_, b.id_)); }
Clopen operator|(const Clopen& a, const Clopen& b) { return Clopen(apply(BoolOp::Join, a.id_, b.id_)); }
Clopen operator-(const Clopen& a, const Clopen& b) { return Clopen(apply(BoolOp::Diff, a.id_, b.id_)); }
Clopen operator~(const Clopen& a) { return Clopen(negate(a.id_)); }

Clopen apply_bool(BoolOp op, const Clopen& c, const std::optional<Clopen>& d) {
  if (op == BoolOp::Complement) {
    if (d) throw Error(ErrorKind::Domain, "complement takes a single operand");
    return ~c;
  }
  if (!d) throw Error(ErrorKind::Domain, "binary operation needs two operands");
  switch (op) {
    case BoolOp::Meet: return c & *d;
    case BoolOp::Join: return c | *d;
    case BoolOp::Diff: return c - *d;
    case BoolOp::Complement: break;
  }
  return ~c;
}

// ---------------------------------------------------------------------------
// Text syntax: x<k>, &, |, !, 0, 1, cyl(<k>,"<bits>"), parentheses.

namespace {

// Precedence of a printed fragment: 3 atom, 2 conjunction, 1 disjunction.
struct Printed {
  std::string text;
  int prec;
};

std::string wrap(const Printed& p, int min_prec) {
  return p.prec >= min_prec ? p.text : "(" + p.text + ")";
}

std::string lit(Coord v, bool positive) { return (positive ? "x" : "!x") + std::to_string(v); }

// Returns the literal list when the node is a single cube (conjunction of literals).
std::optional<std::vector<std::pair<Coord, bool>>> as_cube(Clopen::NodeId id) {
  std::vector<std::pair<Coord, bool>> lits;
  while (!is_terminal(id)) {
    const Node& n = table().get(id);
    if (n.lo == Clopen::kFalse) {
      lits.emplace_back(n.var, true);
      id = n.hi;
    } else if (n.hi == Clopen::kFalse) {
      lits.emplace_back(n.var, false);
      id = n.lo;
    } else {
      return std::nullopt;
    }
  }
  if (id != Clopen::kTrue) return std::nullopt;
  return lits;
}

Printed print(Clopen::NodeId id) {
  if (id == Clopen::kFalse) return {"0", 3};
  if (id == Clopen::kTrue) return {"1", 3};
  if (auto cube = as_cube(id)) {
    const auto& lits = *cube;
    if (lits.size() == 1) return {lit(lits[0].first, lits[0].second), 3};
    bool contiguous = true;
    for (std::size_t i = 1; i < lits.size(); ++i) contiguous &= lits[i].first == lits[i - 1].first + 1;
    if (contiguous) {
      std::string bits;
      for (const auto& l : lits) bits += l.second ? '1' : '0';
      return {"cyl(" + std::to_string(lits[0].first) + ",\"" + bits + "\")", 3};
    }
    std::string s;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i) s += " & ";
      s += lit(lits[i].first, lits[i].second);
    }
    return {s, 2};
  }
  const Node n = table().get(id);
  std::string pos = lit(n.var, true);
  std::string neg = lit(n.var, false);
  if (n.hi == Clopen::kTrue) return {pos + " | " + wrap(print(n.lo), 2), 1};
  if (n.lo == Clopen::kTrue) return {neg + " | " + wrap(print(n.hi), 2), 1};
  if (n.hi == Clopen::kFalse) return {neg + " & " + wrap(print(n.lo), 3), 2};
  if (n.lo == Clopen::kFalse) return {pos + " & " + wrap(print(n.hi), 3), 2};
  return {pos + " & " + wrap(print(n.hi), 3) + " | " + neg + " & " + wrap(print(n.lo), 3), 1};
}

class ClopenParser {
 public:
  explicit ClopenParser(std::string_view text) : s_(text) {}

  Clopen parse() {
    Clopen c = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "clopen syntax: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  Coord number() {
    skip();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v >= kTerminalVar) fail("coordinate too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return static_cast<Coord>(v);
  }
  Clopen expr() {
    Clopen c = term();
    while (accept('|')) c = c | term();
    return c;
  }
  Clopen term() {
    Clopen c = unary();
    while (accept('&')) c = c & unary();
    return c;
  }
  Clopen unary() {
    if (accept('!')) return ~unary();
    return atom();
  }
  Clopen atom() {
    skip();
    if (accept('(')) {
      Clopen c = expr();
      expect(')');
      return c;
    }
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return c == '1' ? Clopen::one() : Clopen::zero();
    }
    if (c == 'x') {
      ++pos_;
      return Clopen::var(number());
    }
    if (s_.substr(pos_, 3) == "cyl") {
      pos_ += 3;
      expect('(');
      Coord offset = number();
      expect(',');
      expect('"');
      std::size_t start = pos_;
      while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) ++pos_;
      std::string_view bits = s_.substr(start, pos_ - start);
      expect('"');
      expect(')');
      if (offset + bits.size() >= kTerminalVar) fail("cylinder too long");
      return Clopen::cylinder(offset, bits);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Clopen::to_string() const { return print(id_).text; }

Clopen Clopen::parse(std::string_view text) { return ClopenParser(text).parse(); }

// ---------------------------------------------------------------------------

ClopenEnumerator::ClopenEnumerator(std::vector<Coord> support, std::size_t bound) : support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  if (support_.size() > bound)
    throw Error(ErrorKind::BoundExceeded, "enumeration support of size " + std::to_string(support_.size()) +
                                              " exceeds bound " + std::to_string(bound));
  table_.assign(std::size_t{1} << support_.size(), false);
}

std::optional<Clopen> ClopenEnumerator::next() {
  if (done_) return std::nullopt;
  Clopen c = Clopen::from_truth_table(support_, table_);
  // Binary increment, table_[0] least significant.
  std::size_t i = 0;
  while (i < table_.size() && table_[i]) table_[i++] = false;
  if (i == table_.size()) {
    done_ = true;
  } else {
    table_[i] = true;
  }
  return c;
}

BigInt ClopenEnumerator::size() const { return BigInt(1) << table_.size(); }

std::vector<Clopen> enumerate_clopens(std::vector<Coord> support, std::size_t limit, std::size_t bound) {
  ClopenEnumerator e(std::move(support), bound);
  std::vector<Clopen> out;
  while (out.size() < limit) {
    auto c = e.next();
    if (!c) break;
    out.push_back(*c);
  }
  return out;
}

}  // namespace cantorlab
