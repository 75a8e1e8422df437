#include "cantorlab/filters.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

std::uint64_t mod_big(const BigInt& a, std::uint64_t p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::Parse, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

ProfiniteThread ProfiniteThread::integer(BigInt a) {
  ProfiniteThread t;
  t.kind_ = a == 0 ? Kind::Zero : Kind::Integer;
  t.integer_ = std::move(a);
  return t;
}

ProfiniteThread ProfiniteThread::factorial_digits(std::vector<std::uint64_t> digits) {
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] > i + 1)
      throw Error(ErrorKind::Domain, "factorial digit " + std::to_string(i + 1) + " must be at most " +
                                         std::to_string(i + 1));
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
  ProfiniteThread t;
  if (digits.empty()) return t;
  t.kind_ = Kind::FactorialDigits;
  t.digits_ = std::move(digits);
  return t;
}

ProfiniteThread ProfiniteThread::parse(std::string_view text) {
  if (text == "zero") return zero();
  if (text.starts_with("int:")) {
    std::string body(text.substr(4));
    try {
      if (body.empty() || body.find_first_not_of("-0123456789") != std::string::npos) throw std::runtime_error("");
      return integer(BigInt(body));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad integer thread '" + std::string(text) + "'");
    }
  }
  if (text.starts_with("digits:")) {
    std::vector<std::uint64_t> digits;
    std::string_view rest = text.substr(7);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      digits.push_back(parse_u64(rest.substr(0, comma), "factorial digit"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return factorial_digits(std::move(digits));
  }
  throw Error(ErrorKind::Parse, "thread must be zero, int:<a> or digits:<d1,d2,...>, got '" + std::string(text) + "'");
}

std::string ProfiniteThread::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Integer: return "int:" + integer_.str();
    case Kind::FactorialDigits: {
      std::string s = "digits:";
      for (std::size_t i = 0; i < digits_.size(); ++i) s += (i ? "," : "") + std::to_string(digits_[i]);
      return s;
    }
  }
  return "zero";
}

std::uint64_t ProfiniteThread::residue(std::uint64_t p) const {
  if (p == 0) throw Error(ErrorKind::Domain, "modulus must be positive");
  switch (kind_) {
    case Kind::Zero: return 0;
    case Kind::Integer: return mod_big(integer_, p);
    case Kind::FactorialDigits: {
      unsigned __int128 fact = 1 % p;
      unsigned __int128 sum = 0;
      for (std::size_t i = 0; i < digits_.size() && fact != 0; ++i) {
        fact = fact * (i + 1) % p;
        sum = (sum + fact * (digits_[i] % p)) % p;
      }
      return static_cast<std::uint64_t>(sum);
    }
  }
  return 0;
}

std::uint64_t ProfiniteThread::factorial_residue(std::uint32_t n) const {
  if (n > 20) throw Error(ErrorKind::BoundExceeded, "n! exceeds 64 bits for n > 20");
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return residue(f);
}

bool oracle_member(const ProfiniteThread& t, const EventuallyPeriodicSet& x) {
  if (x.is_finite()) return false;
  const auto& res = x.residues();
  return std::binary_search(res.begin(), res.end(), t.residue(x.period()));
}

Dyadic limit_along(const ProfiniteThread& t, const StepSequence& v) {
  if (v.empty()) throw Error(ErrorKind::MalformedSequence, "step sequence has no level sets");
  EventuallyPeriodicSet covered;
  for (const auto& [value, level] : v) {
    if (covered.intersect(level) != EventuallyPeriodicSet::empty())
      throw Error(ErrorKind::MalformedSequence, "level set of " + value.to_string() + " overlaps another level set");
    covered = covered.unite(level);
  }
  if (covered != EventuallyPeriodicSet::all())
    throw Error(ErrorKind::MalformedSequence, "level sets miss " + covered.complement().to_string());
  for (const auto& [value, level] : v)
    if (oracle_member(t, level)) return value;
  throw Error(ErrorKind::MalformedSequence, "no level set is a member");
}

StepSequence measure_steps(const Name& m) {
  TailShape shape = tail_shape(m);
  if (shape.open_fresh)
    throw Error(ErrorKind::UnsupportedName, "measures of an open fresh schedule do not form a step sequence");
  Regimes reg = regimes(shape);
  std::map<Dyadic, std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> levels;
  for (std::uint64_t k = 0; k < reg.start; ++k) levels[m.eval(k).measure()].first.push_back(k);
  for (std::uint64_t r = 0; r < reg.period; ++r) levels[m.eval(reg.reps[r]).measure()].second.push_back(r);
  StepSequence steps;
  for (auto& [value, parts] : levels)
    steps.emplace_back(value, EventuallyPeriodicSet::make(reg.start, parts.first, reg.period, parts.second));
  return steps;
}

Name fresh_independent(const Schedule& schedule, FreshLayout layout) { return fresh_name(schedule, layout); }

namespace {

const FreshBlocks& bare_fresh(const Name& m) {
  if (m.op() == Name::Op::Atom && m.prefix().empty())
    if (const auto* f = std::get_if<FreshBlocks>(&m.tail())) return *f;
  throw Error(ErrorKind::TypeMismatch, "expected a name made of independent fresh blocks");
}

}  // namespace

Dyadic prefix_join_measure(const Name& m, const EventuallyPeriodicSet& x, std::uint64_t n, std::uint64_t big_n) {
  const FreshBlocks& f = bare_fresh(m);
  if (big_n < n) throw Error(ErrorKind::Domain, "range end must not precede its start");
  Dyadic prod(1);
  for (auto k = x.next_member(n + 1); k && *k <= big_n; k = x.next_member(*k + 1)) prod *= Dyadic(1) - f.schedule.at(*k);
  return Dyadic(1) - prod;
}

std::string_view to_string(BorelCantelliVerdict::Kind kind) {
  return kind == BorelCantelliVerdict::Kind::Convergent ? "Convergent" : "Divergent";
}

namespace {

enum class TailClass { Zero, Positive, Power, Geometric };

struct Classified {
  TailClass cls;
  const Schedule* base;  // the innermost non-explicit rule
  std::uint64_t head;    // indices below this follow explicit lists
};

std::optional<Classified> classify(const Schedule& s) {
  switch (s.kind()) {
    case Schedule::Kind::Constant:
      return Classified{s.constant_value().is_zero() ? TailClass::Zero : TailClass::Positive, &s, 0};
    case Schedule::Kind::PowerDecay: return Classified{TailClass::Power, &s, 0};
    case Schedule::Kind::Geometric: return Classified{TailClass::Geometric, &s, 0};
    case Schedule::Kind::Explicit: {
      if (!s.tail()) return std::nullopt;
      auto inner = classify(*s.tail());
      if (!inner) return std::nullopt;
      inner->head = std::max<std::uint64_t>(inner->head, s.head().size());
      return inner;
    }
  }
  return std::nullopt;
}

}  // namespace

BorelCantelliVerdict borel_cantelli_verdict(const Schedule& schedule, const EventuallyPeriodicSet& x) {
  auto c = classify(schedule);
  if (!c) throw Error(ErrorKind::Unclassifiable, "schedule " + schedule.to_string() + " has no tail rule");
  BorelCantelliVerdict v;
  v.schedule_ = schedule;
  v.set_ = x;
  if (x.is_finite()) {
    v.kind_ = BorelCantelliVerdict::Kind::Convergent;
    v.rule_ = "finite-set";
    return v;
  }
  switch (c->cls) {
    case TailClass::Zero:
      v.kind_ = BorelCantelliVerdict::Kind::Convergent;
      v.rule_ = "eventually-zero";
      break;
    case TailClass::Geometric:
      v.kind_ = BorelCantelliVerdict::Kind::Convergent;
      v.rule_ = "geometric-sum";
      break;
    case TailClass::Positive:
      v.kind_ = BorelCantelliVerdict::Kind::Divergent;
      v.rule_ = "constant-positive";
      break;
    case TailClass::Power:
      v.kind_ = BorelCantelliVerdict::Kind::Divergent;
      v.rule_ = "dyadic-block-bound";
      break;
  }
  return v;
}

Dyadic BorelCantelliVerdict::tail_bound(std::uint64_t n) const {
  if (kind_ != Kind::Convergent) throw Error(ErrorKind::TypeMismatch, "tail bounds exist only for convergent sums");
  auto c = classify(schedule_);
  Dyadic sum;
  if (set_.is_finite()) {
    for (std::uint64_t k : set_.exceptions())
      if (k > n) sum += schedule_.at(k);
    return sum;
  }
  for (auto k = set_.next_member(n + 1); k && *k < c->head; k = set_.next_member(*k + 1)) sum += schedule_.at(*k);
  if (c->cls == TailClass::Geometric) {
    std::uint64_t from = std::max<std::uint64_t>(n + 1, c->head);
    sum += Dyadic::pow2(1 - static_cast<std::int64_t>(from) - c->base->geometric_offset());
  }
  return sum;
}

std::uint64_t BorelCantelliVerdict::certificate(const Dyadic& eps, std::uint64_t base) const {
  if (kind_ != Kind::Divergent) throw Error(ErrorKind::TypeMismatch, "certificates exist only for divergent sums");
  if (eps.sign() <= 0) throw Error(ErrorKind::Domain, "epsilon must be positive");
  constexpr std::uint64_t kMaxSteps = std::uint64_t{1} << 26;
  Dyadic prod(1);
  if (prod <= eps) return base;
  for (auto k = set_.next_member(base + 1); k; k = set_.next_member(*k + 1)) {
    if (*k - base > kMaxSteps) break;
    prod *= Dyadic(1) - schedule_.at(*k);
    if (prod <= eps) return *k;
  }
  throw Error(ErrorKind::BoundExceeded, "no certificate within " + std::to_string(kMaxSteps) + " indices");
}

MeasureValue nu(const Name& m, const ProfiniteThread& t, std::uint64_t window) {
  MeasureValue v = tail_limit(m, Clopen::one(), window);
  if (v.kind() != MeasureValue::Kind::Conditional) return v;
  Dyadic value = limit_along(t, measure_steps(m));
  const auto& cv = v.conditional();
  for (const auto& b : cv.branches) {
    bool match = true;
    for (std::size_t i = 0; i < cv.queries.size(); ++i) match &= oracle_member(t, cv.queries[i]) == b.answers[i];
    if (match) {
      if (b.value.value != value) throw Error(ErrorKind::Domain, "branch value disagrees with the step limit");
      return b.value;
    }
  }
  throw Error(ErrorKind::Domain, "no branch matches the oracle answers");
}

namespace {

EventuallyPeriodicSet near_set(const Name& m, const Dyadic& r, std::uint64_t n) {
  TailShape shape = tail_shape(m);
  Regimes reg = regimes(shape);
  auto near = [&](std::uint64_t k) {
    Dyadic d = m.eval(k).measure() - r;
    if (d.sign() < 0) d = -d;
    return d * Dyadic(static_cast<long long>(n + 1)) < Dyadic(1);
  };
  std::vector<std::uint64_t> below;
  for (std::uint64_t k = 0; k < reg.start; ++k)
    if (near(k)) below.push_back(k);
  std::vector<std::uint64_t> residues;
  for (std::uint64_t res = 0; res < reg.period; ++res)
    if (near(reg.reps[res])) residues.push_back(res);
  return EventuallyPeriodicSet::make(reg.start, below, reg.period, residues);
}

}  // namespace

Ap1Result ap1_diagonalize(const std::vector<Name>& chain, const ProfiniteThread& t, std::uint64_t window) {
  if (chain.empty()) throw Error(ErrorKind::Precondition, "the chain needs at least one name");
  if (window == 0) throw Error(ErrorKind::Domain, "window must be at least 1");
  Ap1Report rep;
  for (std::size_t n = 0; n < chain.size(); ++n) {
    MeasureValue v = nu(chain[n], t, window);
    if (!v.is_exact())
      throw Error(ErrorKind::Precondition, "nu of name " + std::to_string(n) + " does not resolve exactly");
    rep.limits.push_back(v.exact().value);
  }
  for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
    LeqVerdict lv = leq_name(chain[n + 1], chain[n], window);
    if (lv.kind != LeqKind::Always)
      throw Error(ErrorKind::Precondition, "name " + std::to_string(n + 1) + " is not certified below name " +
                                               std::to_string(n) + " (" + std::string(to_string(lv.kind)) + ")");
    rep.chain.push_back(lv);
  }
  rep.common = EventuallyPeriodicSet::all();
  for (std::size_t n = 0; n < chain.size(); ++n) {
    EventuallyPeriodicSet u = near_set(chain[n], rep.limits[n], n);
    if (!oracle_member(t, u))
      throw Error(ErrorKind::Precondition, "near set " + u.to_string() + " of name " + std::to_string(n) +
                                               " is not an oracle member");
    rep.near.push_back(u);
    rep.common = rep.common.intersect(u);
  }
  for (std::size_t n = 0; n < chain.size(); ++n) {
    std::uint64_t from = n == 0 ? 0 : std::max<std::uint64_t>(n, rep.cuts.back() + 1);
    auto l = rep.common.next_member(from);
    if (!l) throw Error(ErrorKind::Precondition, "the near sets have a finite intersection");
    rep.cuts.push_back(*l);
  }
  std::vector<std::uint64_t> cuts;
  std::vector<Name> pieces;
  if (rep.cuts[0] > 0) {
    cuts.push_back(0);
    pieces.push_back(one_name());
  }
  for (std::size_t n = 0; n < chain.size(); ++n) {
    cuts.push_back(rep.cuts[n]);
    pieces.push_back(chain[n]);
  }
  Name out = spliced_name(IntervalPartition(cuts), pieces);
  for (const auto& m : chain) rep.below.push_back(leq_name(out, m, window));
  for (std::uint64_t k = 0; k < window; ++k) {
    rep.window_values.push_back(out.eval(k).measure());
    auto it = std::upper_bound(rep.cuts.begin(), rep.cuts.end(), k);
    rep.segment.push_back(static_cast<std::int64_t>(it - rep.cuts.begin()) - 1);
  }
  rep.final_value = rep.window_values.back();
  rep.note =
      "each near set is an oracle member; the pseudo-intersection is replaced by the finite intersection of the "
      "supplied horizon";
  return {out, rep};
}

}  // namespace cantorlab
