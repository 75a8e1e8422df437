#include "cantorlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "cantorlab/canjar.hpp"
#include "cantorlab/error.hpp"

namespace cantorlab {

std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::StatedValue: return "stated-value";
    case Basis::IndependentOracle: return "independent-oracle";
    case Basis::Identity: return "identity";
    case Basis::Property: return "property";
  }
  return "property";
}

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.pass; }));
}

namespace {

std::vector<const CaseRecord*> sorted_cases(const std::vector<CaseRecord>& cases) {
  std::vector<const CaseRecord*> out;
  for (const auto& c : cases) out.push_back(&c);
  std::stable_sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->key < b->key; });
  return out;
}

}  // namespace

Json SuiteReport::to_json() const {
  Json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["seed"] = config.seed;
  Json cfg;
  cfg["window"] = config.window;
  cfg["depth"] = config.depth;
  cfg["thread"] = config.thread.to_string();
  j["config"] = cfg;
  Json summary;
  summary["cases"] = cases.size();
  summary["passed"] = cases.size() - failures();
  summary["failed"] = failures();
  j["summary"] = summary;
  j["pass"] = passed();
  if (config.timing) j["wall_time_ms"] = static_cast<std::int64_t>(seconds * 1000.0);
  Json arr = Json::array();
  for (const auto* c : sorted_cases(cases)) {
    Json e;
    e["key"] = c->key;
    e["input"] = c->input;
    e["expected"] = c->expected;
    e["actual"] = c->actual;
    e["basis"] = std::string(to_string(c->basis));
    e["pass"] = c->pass;
    arr.push_back(e);
  }
  j["cases"] = arr;
  j["notes"] = notes;
  return j;
}

std::string SuiteReport::to_tsv() const {
  std::ostringstream out;
  out << "# suite=" << suite << " seed=" << config.seed << " window=" << config.window << " depth=" << config.depth
      << " thread=" << config.thread.to_string() << " cases=" << cases.size() << " failed=" << failures() << "\n";
  out << "key\tpass\tbasis\tinput\texpected\tactual\n";
  for (const auto* c : sorted_cases(cases))
    out << c->key << '\t' << (c->pass ? "pass" : "FAIL") << '\t' << to_string(c->basis) << '\t' << c->input << '\t'
        << c->expected.dump() << '\t' << c->actual.dump() << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Random generators.

Clopen random_clopen(Rng& rng, Coord max_coord, std::size_t max_support) {
  std::vector<Coord> pool(max_coord + 1);
  std::iota(pool.begin(), pool.end(), 0);
  std::size_t n = rng.below(std::min<std::size_t>(max_support, pool.size()) + 1);
  for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  std::vector<Coord> support(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(support.begin(), support.end());
  std::vector<bool> table(std::size_t{1} << n);
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = rng.coin();
  return Clopen::from_truth_table(support, table);
}

EventuallyPeriodicSet random_set(Rng& rng) {
  std::uint64_t threshold = rng.below(7);
  std::vector<std::uint64_t> exceptions;
  for (std::uint64_t k = 0; k < threshold; ++k)
    if (rng.coin()) exceptions.push_back(k);
  std::uint64_t period = 1 + rng.below(6);
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < period; ++r)
    if (rng.coin()) residues.push_back(r);
  return EventuallyPeriodicSet::make(threshold, exceptions, period, residues);
}

namespace {

std::string random_bits(Rng& rng, std::size_t min_len, std::size_t max_len) {
  std::size_t n = min_len + rng.below(max_len - min_len + 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += rng.coin() ? '1' : '0';
  return s;
}

TailRule random_tail(Rng& rng, bool allow_indicator) {
  switch (rng.below(allow_indicator ? 7 : 6)) {
    case 0: return SlidingPattern{random_bits(rng, 1, 3)};
    case 1: {
      auto patterns = dyadic_antichain(Rational(1 + rng.below(15), 16), 4);
      return SlidingUnion{patterns};
    }
    case 2: return ConstantTail{random_clopen(rng, 5, 3)};
    case 3: return FreshBlocks{Schedule::constant(Dyadic(static_cast<long long>(rng.below(5)), 2)), FreshLayout{}};
    case 4: return rng.coin() ? TailRule{ZeroTail{}} : TailRule{OneTail{}};
    case 5: return SlidingPattern{random_bits(rng, 1, 2)};
    default: return IndicatorTail{random_set(rng)};
  }
}

}  // namespace

Name random_name(Rng& rng, int depth, bool allow_indicator) {
  if (depth <= 0 || rng.below(3) == 0) {
    std::vector<Clopen> prefix;
    if (rng.below(4) == 0)
      for (std::uint64_t i = 0, n = 1 + rng.below(2); i < n; ++i) prefix.push_back(random_clopen(rng, 5, 2));
    return Name::atom(std::move(prefix), random_tail(rng, allow_indicator));
  }
  switch (rng.below(4)) {
    case 0: return pointwise(BoolOp::Meet, random_name(rng, depth - 1, allow_indicator),
                             random_name(rng, depth - 1, allow_indicator));
    case 1: return pointwise(BoolOp::Join, random_name(rng, depth - 1, allow_indicator),
                             random_name(rng, depth - 1, allow_indicator));
    case 2: return pointwise(BoolOp::Complement, random_name(rng, depth - 1, allow_indicator));
    default: return and_const(random_name(rng, depth - 1, allow_indicator), random_clopen(rng, 5, 3));
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string pad(std::uint64_t n, int width = 4) {
  std::string s = std::to_string(n);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

std::string name_text(const Name& m) { return to_json(m).dump(); }

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}

  void equal(std::string key, std::string input, Json expected, Json actual, Basis basis) {
    bool pass = expected == actual;
    r_.cases.push_back({std::move(key), std::move(input), std::move(expected), std::move(actual), basis, pass});
  }
  void check(std::string key, std::string input, Json expected, Json actual, Basis basis, bool pass) {
    r_.cases.push_back({std::move(key), std::move(input), std::move(expected), std::move(actual), basis, pass});
  }
  /// A law checked over many instances: expected and actual are counts.
  void tally(std::string key, std::string input, std::uint64_t total, std::uint64_t held, Basis basis) {
    Json e = std::to_string(total) + " of " + std::to_string(total);
    Json a = std::to_string(held) + " of " + std::to_string(total);
    r_.cases.push_back({std::move(key), std::move(input), e, a, basis, held == total});
  }
  /// Runs f, recording an error as a failed case.
  void guard(const std::string& key, const std::string& input, const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      r_.cases.push_back({key, input, "no error",
                          std::string(to_string(e.kind())) + ": " + e.what(), Basis::Property, false});
    }
  }
  void note(std::string s) { r_.notes.push_back(std::move(s)); }

 private:
  SuiteReport& r_;
};

Json dy(const Dyadic& d) { return to_json(d); }

// Truth table of c over `support` (bit j of an assignment is support[j]).
std::vector<bool> truth_table(const Clopen& c, const std::vector<Coord>& support) {
  std::vector<bool> t(std::size_t{1} << support.size());
  for (std::size_t a = 0; a < t.size(); ++a)
    t[a] = c.contains([&](Coord v) {
      auto it = std::lower_bound(support.begin(), support.end(), v);
      if (it == support.end() || *it != v) return false;
      return ((a >> (it - support.begin())) & 1) != 0;
    });
  return t;
}

std::vector<Coord> joint_support(const Clopen& a, const Clopen& b) {
  auto s = a.support();
  auto t = b.support();
  s.insert(s.end(), t.begin(), t.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Satisfying assignments over the support, divided by 2^|support|.
Dyadic counted_measure(const Clopen& c) {
  auto s = c.support();
  auto t = truth_table(c, s);
  long long n = std::count(t.begin(), t.end(), true);
  return Dyadic(BigInt(n), static_cast<std::uint32_t>(s.size()));
}

Clopen random_formula(Rng& rng, Coord max_coord, int depth) {
  if (depth == 0 || rng.below(4) == 0) return Clopen::literal(static_cast<Coord>(rng.below(max_coord + 1)), rng.coin());
  switch (rng.below(3)) {
    case 0: return random_formula(rng, max_coord, depth - 1) & random_formula(rng, max_coord, depth - 1);
    case 1: return random_formula(rng, max_coord, depth - 1) | random_formula(rng, max_coord, depth - 1);
    default: return ~random_formula(rng, max_coord, depth - 1);
  }
}

// Plain-integer fractions as an oracle for Dyadic arithmetic.
struct Frac {
  __int128 n;
  __int128 d;
};

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Frac reduce(Frac f) {
  __int128 g = gcd128(f.n, f.d);
  if (g == 0) return {0, 1};
  return {f.n / g, f.d / g};
}

bool same(const Dyadic& x, const Frac& f) {
  __int128 num = static_cast<__int128>(x.numerator().convert_to<long long>());
  __int128 den = static_cast<__int128>(1) << x.exponent();
  Frac r = reduce(f);
  return num == r.n && den == r.d;
}

// ---------------------------------------------------------------------------

void suite_algebra_laws(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  const std::vector<Coord> s3{0, 1, 2};
  auto all = enumerate_clopens(s3);
  rec.equal("enum/size", "enumerate_clopens({0,1,2})", 256, all.size(), Basis::IndependentOracle);
  rec.equal("enum/size-empty", "enumerate_clopens({})", 2, enumerate_clopens({}).size(), Basis::Identity);
  rec.equal("enum/size-one", "enumerate_clopens({5})", 4, enumerate_clopens({5}).size(), Basis::Identity);
  rec.equal("enum/size-two", "enumerate_clopens({0,1})", 16, enumerate_clopens({0, 1}).size(),
            Basis::IndependentOracle);

  // Canonicity: every function rebuilt as a join of minterm cubes is the
  // same record, and records differ exactly when truth tables differ.
  std::uint64_t rebuilt = 0;
  std::vector<std::vector<bool>> tables;
  for (const auto& c : all) {
    auto t = truth_table(c, s3);
    tables.push_back(t);
    Clopen dnf;
    for (std::size_t a = 0; a < 8; ++a) {
      if (!t[a]) continue;
      Clopen cube = Clopen::one();
      for (std::size_t j = 0; j < 3; ++j) cube &= Clopen::literal(s3[j], (a >> j) & 1);
      dnf |= cube;
    }
    if (dnf == c && Clopen::parse(c.to_string()) == c) ++rebuilt;
  }
  rec.tally("canon/rebuild", "minterm joins and print/parse over {0,1,2}", all.size(), rebuilt,
            Basis::IndependentOracle);
  std::uint64_t pairs = 0, agree = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j, ++pairs)
      if ((all[i] == all[j]) == (tables[i] == tables[j])) ++agree;
  rec.tally("canon/equality", "record equality vs truth tables, all pairs over {0,1,2}", pairs, agree,
            Basis::IndependentOracle);

  std::map<std::string, std::uint64_t> held;
  std::uint64_t n_pairs = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      ++n_pairs;
      held["comm"] += (a & b) == (b & a) && (a | b) == (b | a);
      held["demorgan"] += ~(a & b) == (~a | ~b) && ~(a | b) == (~a & ~b);
      held["absorb"] += (a & (a | b)) == a && (a | (a & b)) == a;
      held["dblcomp"] += ~~a == a;
      held["modular"] += (a | b).measure() + (a & b).measure() == a.measure() + b.measure();
      held["additive"] += !a.disjoint(b) || (a | b).measure() == a.measure() + b.measure();
      held["complement"] += (~a).measure() == Dyadic(1) - a.measure();
      held["monotone"] += !a.leq(b) || a.measure() <= b.measure();
      held["leq"] += a.leq(b) == (a - b).is_zero() && a.leq(b) == ((a & b) == a);
      held["measure"] += a.measure() == counted_measure(a);
    }
  }
  for (const auto& [law, count] : held)
    rec.tally("exhaustive/" + law, "all pairs over {0,1,2}", n_pairs, count, Basis::Property);

  std::uint64_t triples = 4096, assoc = 0, distrib = 0;
  for (std::uint64_t i = 0; i < triples; ++i) {
    const auto& a = all[rng.below(all.size())];
    const auto& b = all[rng.below(all.size())];
    const auto& c = all[rng.below(all.size())];
    assoc += ((a & b) & c) == (a & (b & c)) && ((a | b) | c) == (a | (b | c));
    distrib += (a & (b | c)) == ((a & b) | (a & c)) && (a | (b & c)) == ((a | b) & (a | c));
  }
  rec.tally("sampled/assoc", "seeded triples over {0,1,2}", triples, assoc, Basis::Property);
  rec.tally("sampled/distrib", "seeded triples over {0,1,2}", triples, distrib, Basis::Property);

  // Larger random cases, checked against assignment enumeration.
  std::uint64_t large = 1000, canon = 0, laws = 0, meas = 0;
  for (std::uint64_t i = 0; i < large; ++i) {
    Clopen a = random_formula(rng, 11, 5);
    Clopen b = rng.below(4) == 0 ? ~~a | (a & random_formula(rng, 11, 3)) : random_formula(rng, 11, 5);
    auto s = joint_support(a, b);
    canon += (a == b) == (truth_table(a, s) == truth_table(b, s));
    Clopen c = random_formula(rng, 11, 4);
    laws += (a & (b | c)) == ((a & b) | (a & c)) && ~(a & b) == (~a | ~b) &&
            (a | b).measure() + (a & b).measure() == a.measure() + b.measure();
    meas += a.measure() == counted_measure(a) && (a - b).measure() == counted_measure(a - b);
  }
  rec.tally("random/canon", "seeded formulas over {0..11}", large, canon, Basis::IndependentOracle);
  rec.tally("random/laws", "seeded formulas over {0..11}", large, laws, Basis::Property);
  rec.tally("random/measure", "seeded formulas over {0..11}", large, meas, Basis::IndependentOracle);

  // Dyadic arithmetic against reduced integer fractions.
  std::uint64_t dy_pairs = 10000, dy_ok = 0;
  for (std::uint64_t i = 0; i < dy_pairs; ++i) {
    long long p1 = static_cast<long long>(rng.below(1 << 21)) - (1 << 20);
    long long p2 = static_cast<long long>(rng.below(1 << 21)) - (1 << 20);
    auto q1 = static_cast<std::uint32_t>(rng.below(21));
    auto q2 = static_cast<std::uint32_t>(rng.below(21));
    Dyadic x(BigInt(p1), q1), y(BigInt(p2), q2);
    Frac fx{p1, static_cast<__int128>(1) << q1}, fy{p2, static_cast<__int128>(1) << q2};
    bool ok = same(x, fx) && same(y, fy);
    ok = ok && same(x + y, {fx.n * fy.d + fy.n * fx.d, fx.d * fy.d});
    ok = ok && same(x - y, {fx.n * fy.d - fy.n * fx.d, fx.d * fy.d});
    ok = ok && same(x * y, {fx.n * fy.n, fx.d * fy.d});
    __int128 lhs = fx.n * fy.d, rhs = fy.n * fx.d;
    ok = ok && ((x < y) == (lhs < rhs)) && ((x == y) == (lhs == rhs));
    dy_ok += ok;
  }
  rec.tally("dyadic/oracle", "seeded pairs p/2^q, |p| <= 2^20, q <= 20", dy_pairs, dy_ok, Basis::IndependentOracle);

  rec.equal("example/meet", "cyl(5,\"1\") & cyl(5,\"0\")", "0",
            (Clopen::cylinder(5, "1") & Clopen::cylinder(5, "0")).to_string(), Basis::Identity);
  rec.equal("example/join-measure", "cyl(0,\"1\") | cyl(1,\"1\")", dy(Dyadic(3, 2)),
            dy((Clopen::cylinder(0, "1") | Clopen::cylinder(1, "1")).measure()), Basis::IndependentOracle);
  rec.equal("example/cylinder", "cyl(3,\"01\")", dy(Dyadic(1, 2)), dy(Clopen::cylinder(3, "01").measure()),
            Basis::StatedValue);
  rec.equal("example/leq", "cyl(0,\"1\") <= cyl(1,\"1\")", false,
            Clopen::cylinder(0, "1").leq(Clopen::cylinder(1, "1")), Basis::IndependentOracle);
}

void suite_homodot(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  for (std::uint64_t i = 0; i < 60; ++i) {
    Name m = random_name(rng, 3, true);
    Name n = random_name(rng, 3, true);
    std::string input = name_text(m) + " ; " + name_text(n);
    rec.guard("pair/" + pad(i), input, [&] {
      std::uint64_t ok_meet = 0, ok_join = 0, ok_comp = 0;
      Name meet = pointwise(BoolOp::Meet, m, n);
      Name join = pointwise(BoolOp::Join, m, n);
      Name comp = pointwise(BoolOp::Complement, m);
      for (std::uint64_t k = 0; k <= cfg.window; ++k) {
        Clopen a = m.eval(k), b = n.eval(k);
        ok_meet += meet.eval(k) == apply_bool(BoolOp::Meet, a, b);
        ok_join += join.eval(k) == apply_bool(BoolOp::Join, a, b);
        ok_comp += comp.eval(k) == apply_bool(BoolOp::Complement, a);
      }
      rec.tally("pair/" + pad(i) + "/meet", input, cfg.window + 1, ok_meet, Basis::Property);
      rec.tally("pair/" + pad(i) + "/join", input, cfg.window + 1, ok_join, Basis::Property);
      rec.tally("pair/" + pad(i) + "/complement", input, cfg.window + 1, ok_comp, Basis::Property);
      LeqVerdict v = leq_name(m, n, cfg.window);
      if (v.kind == LeqKind::Always) {
        Name diff = pointwise(BoolOp::Meet, m, pointwise(BoolOp::Complement, n));
        std::uint64_t zero = 0;
        for (std::uint64_t k = 0; k <= cfg.window; ++k) zero += diff.eval(k).is_zero();
        rec.tally("pair/" + pad(i) + "/always-zero", input, cfg.window + 1, zero, Basis::Property);
      }
      if (v.kind == LeqKind::No) {
        bool least = !(m.eval(v.witness).leq(n.eval(v.witness)));
        for (std::uint64_t k = 0; k < v.witness; ++k) least &= m.eval(k).leq(n.eval(k));
        rec.check("pair/" + pad(i) + "/witness", input, "least failing index", to_json(v), Basis::Property, least);
      }
    });
  }
  Name zero_meet = pointwise(BoolOp::Meet, make_Ms("0"), make_Ms("1"));
  Name one_join = pointwise(BoolOp::Join, make_Ms("0"), make_Ms("1"));
  std::uint64_t z = 0, o = 0;
  for (std::uint64_t k = 0; k <= cfg.window; ++k) {
    z += zero_meet.eval(k).is_zero();
    o += one_join.eval(k).is_one();
  }
  rec.tally("example/sibling-meet", "Ms:0 & Ms:1", cfg.window + 1, z, Basis::Identity);
  rec.tally("example/sibling-join", "Ms:0 | Ms:1", cfg.window + 1, o, Basis::IndependentOracle);
  Name m = make_Ms("1");
  Name mc = pointwise(BoolOp::Meet, m, pointwise(BoolOp::Complement, m));
  std::uint64_t mz = 0;
  for (std::uint64_t k = 0; k <= cfg.window; ++k) mz += mc.eval(k).is_zero();
  rec.tally("example/self-complement", "Ms:1 & !Ms:1", cfg.window + 1, mz, Basis::Identity);
  rec.equal("example/and-const-0", "Ms:1 *[cyl(0,\"1\")] at 0", Clopen::var(0).to_string(),
            and_const(make_Ms("1"), Clopen::cylinder(0, "1")).eval(0).to_string(), Basis::IndependentOracle);
  rec.equal("example/and-const-3", "Ms:1 *[cyl(0,\"1\")] at 3", dy(Dyadic(1, 2)),
            dy(and_const(make_Ms("1"), Clopen::cylinder(0, "1")).eval(3).measure()), Basis::IndependentOracle);
  rec.equal("example/leq-extension", "Ms:10 <= Ms:1", to_json(LeqVerdict{LeqKind::Always, "pattern-extension", 0, 0, ""}),
            to_json(leq_name(make_Ms("10"), make_Ms("1"), cfg.window)), Basis::Identity);
  rec.equal("example/leq-witness", "Ms:1 <= Ms:0", to_json(LeqVerdict{LeqKind::No, "", 0, 0, ""}),
            to_json(leq_name(make_Ms("1"), make_Ms("0"), cfg.window)), Basis::IndependentOracle);
}

void suite_restr_incl(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  for (std::uint64_t i = 0; i < 40; ++i) {
    Name m = random_name(rng, 2, true);
    Name r = random_name(rng, 2, true);
    Clopen q = random_clopen(rng, 5, 3);
    Name n = pointwise(BoolOp::Join, and_const(m, q), r);
    std::string input = name_text(m) + " ; q=" + q.to_string() + " ; " + name_text(n);
    rec.guard("case/" + pad(i), input, [&] {
      bool hyp = true, concl = true;
      Name mq = and_const(m, q), nq = and_const(n, q);
      for (std::uint64_t k = 0; k <= cfg.window; ++k) {
        hyp &= (m.eval(k) & q).leq(n.eval(k));
        concl &= mq.eval(k).leq(nq.eval(k));
      }
      LeqVerdict tail_hyp = leq_name(mq, n, cfg.window);
      LeqVerdict tail_concl = leq_name(mq, nq, cfg.window);
      auto eventually = [](const LeqVerdict& v) { return v.kind == LeqKind::Always || v.kind == LeqKind::Eventually; };
      Json actual;
      actual["hypothesis_window"] = hyp;
      actual["hypothesis_tail"] = std::string(to_string(tail_hyp.kind));
      actual["conclusion_window"] = concl;
      actual["conclusion_tail"] = std::string(to_string(tail_concl.kind));
      rec.check("case/" + pad(i), input, "conclusion holds whenever the hypothesis does", actual, Basis::Property,
                !(hyp && eventually(tail_hyp)) || (concl && eventually(tail_concl)));
    });
  }
}

std::string table_hex(const std::vector<bool>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4 && i + j < t.size(); ++j) v |= t[i + j] << j;
    s += "0123456789abcdef"[v];
  }
  return s;
}

void suite_ms_measure(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<std::string> strings{""};
  for (std::size_t len = 1; len <= 4; ++len)
    for (std::uint64_t v = 0; v < (1u << len); ++v) {
      std::string s(len, '0');
      for (std::size_t j = 0; j < len; ++j)
        if ((v >> (len - 1 - j)) & 1) s[j] = '1';
      strings.push_back(s);
    }
  struct Sample {
    Clopen b;
    std::string text;
  };
  std::vector<Sample> family;
  for (const auto& c : enumerate_clopens({0, 1, 2})) family.push_back({c, c.to_string()});
  const std::vector<Coord> s8{0, 1, 2, 3, 4, 5, 6, 7};
  for (int i = 0; i < 66; ++i) {
    std::vector<bool> t(256);
    for (std::size_t a = 0; a < t.size(); ++a) t[a] = rng.coin();
    family.push_back({Clopen::from_truth_table(s8, t), "table{0..7}:" + table_hex(t)});
  }
  std::uint64_t idx = 0;
  for (const auto& s : strings) {
    Name ms = make_Ms(s);
    Dyadic scale = Dyadic::pow2(-static_cast<std::int64_t>(s.size()));
    std::uint64_t bi = 0;
    for (const auto& b : family) {
      std::string key = "s=" + (s.empty() ? std::string("e") : s) + "/B=" + pad(bi++);
      std::string input = "Ms:" + s + " B=" + b.text;
      auto sup = b.b.support();
      std::uint64_t bound = sup.empty() ? 0 : std::uint64_t{sup.back()} + 1;
      MeasureValue v = tail_limit(ms, b.b, cfg.window);
      Json expected;
      expected["kind"] = "Exact";
      expected["value"] = dy(scale * b.b.measure());
      expected["stabilization_at_most"] = bound;
      Json actual;
      actual["kind"] = std::string(to_string(v.kind()));
      bool pass = false;
      if (v.is_exact()) {
        actual["value"] = dy(v.exact().value);
        actual["stabilization_index"] = v.exact().stabilization_index;
        pass = v.exact().value == scale * b.b.measure() && v.exact().stabilization_index <= bound;
      }
      rec.check(key, input, expected, actual, Basis::StatedValue, pass);
      ++idx;
    }
  }
  rec.note("B ranges over all 256 clopens on {0,1,2} and 66 seeded truth tables on {0..7}");
}

void suite_partition(Recorder& rec, const SuiteConfig& cfg) {
  for (std::uint32_t n = 0; n <= cfg.depth; ++n) {
    auto fam = partition_family(n, std::max(cfg.depth, kDefaultPartitionBound));
    std::string input = "partition_family(" + std::to_string(n) + ")";
    rec.equal("n=" + pad(n, 2) + "/size", input, std::uint64_t{1} << n, fam.size(), Basis::StatedValue);
    std::uint64_t disjoint = 0, cover = 0;
    for (std::uint64_t k = 0; k <= cfg.window; ++k) {
      std::vector<Clopen> vals;
      for (const auto& m : fam) vals.push_back(m.eval(k));
      bool ok = true;
      Clopen join;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        for (std::size_t j = i + 1; j < vals.size() && ok; ++j) ok = vals[i].disjoint(vals[j]);
        join |= vals[i];
      }
      disjoint += ok;
      cover += join.is_one();
    }
    rec.tally("n=" + pad(n, 2) + "/disjoint", input, cfg.window + 1, disjoint, Basis::StatedValue);
    rec.tally("n=" + pad(n, 2) + "/join-one", input, cfg.window + 1, cover, Basis::StatedValue);
    std::uint64_t dens = 0;
    for (const auto& m : fam) {
      auto d = unconditional_density(m);
      dens += d.constant_value() && *d.constant_value() == Dyadic::pow2(-static_cast<std::int64_t>(n));
    }
    rec.tally("n=" + pad(n, 2) + "/density", input, fam.size(), dens, Basis::StatedValue);
  }
  for (std::uint32_t len = 0; len <= 3; ++len) {
    for (const auto& m : partition_family(len)) {
      const auto& bits = m.op() == Name::Op::Atom && std::holds_alternative<SlidingPattern>(m.tail())
                             ? std::get<SlidingPattern>(m.tail()).bits
                             : std::string();
      Name join = pointwise(BoolOp::Join, make_Ms(bits + "0"), make_Ms(bits + "1"));
      Name meet = pointwise(BoolOp::Meet, make_Ms(bits + "0"), make_Ms(bits + "1"));
      std::uint64_t ok = 0;
      for (std::uint64_t k = 0; k <= cfg.window; ++k) ok += join.eval(k) == m.eval(k) && meet.eval(k).is_zero();
      rec.tally("split/" + (bits.empty() ? std::string("e") : bits), "Ms:" + bits + "0 , Ms:" + bits + "1",
                cfg.window + 1, ok, Basis::StatedValue);
    }
  }
}

void suite_gm_reals(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  auto d58 = unconditional_density(make_Malpha(Rational(5, 8), 8));
  rec.equal("alpha=5/8", "Malpha:5/8@8", dy(Dyadic(5, 3)), d58.constant_value() ? dy(*d58.constant_value()) : Json(),
            Basis::StatedValue);
  Json chain = Json::array({"0", "100"});
  rec.equal("alpha=5/8/antichain", "dyadic_antichain(5/8, 8)", chain, dyadic_antichain(Rational(5, 8), 8),
            Basis::IndependentOracle);
  for (std::uint32_t d : {6u, 10u, 14u}) {
    auto dd = unconditional_density(make_Malpha(Rational(2, 3), d));
    Json actual;
    bool pass = false;
    if (auto c = dd.constant_value()) {
      Rational err = c->to_rational() - Rational(2, 3);
      if (err < 0) err = -err;
      actual["constant"] = dy(*c);
      actual["error"] = rational_json(err);
      pass = err <= Rational(1, BigInt(1) << d);
    }
    rec.check("alpha=2/3/depth=" + pad(d, 2), "Malpha:2/3@" + std::to_string(d),
              "|constant - 2/3| <= 2^-" + std::to_string(d), actual, Basis::StatedValue, pass);
  }
  rec.equal("alpha=0", "Malpha:0@8", true, finiteness_certificate(make_Malpha(0, 8), 8).kind ==
                                                   FinitenessKind::ForcedFinite && make_Malpha(0, 8).eval(3).is_zero(),
            Basis::StatedValue);
  rec.equal("alpha=1", "dyadic_antichain(1, 4)", Json::array({""}), dyadic_antichain(1, 4), Basis::Identity);
  rec.equal("alpha=1/2", "dyadic_antichain(1/2, 4)", Json::array({"0"}), dyadic_antichain(Rational(1, 2), 4),
            Basis::Identity);
  for (int i = 0; i < 24; ++i) {
    std::uint32_t e = 1 + static_cast<std::uint32_t>(rng.below(10));
    Dyadic a(BigInt(rng.below((std::uint64_t{1} << e) + 1)), e);
    auto ac = dyadic_antichain(a.to_rational(), 12);
    bool anti = true;
    Dyadic sum;
    for (std::size_t x = 0; x < ac.size(); ++x) {
      sum += Dyadic::pow2(-static_cast<std::int64_t>(ac[x].size()));
      for (std::size_t y = 0; y < x; ++y) anti &= incompatible(ac[x], ac[y]);
    }
    auto d = unconditional_density(make_Malpha(a.to_rational(), 12));
    Json actual;
    actual["antichain"] = anti;
    actual["sum"] = dy(sum);
    actual["density"] = d.constant_value() ? dy(*d.constant_value()) : Json();
    Json expected;
    expected["antichain"] = true;
    expected["sum"] = dy(a);
    expected["density"] = dy(a);
    rec.equal("random/" + pad(static_cast<std::uint64_t>(i), 2), "Malpha:" + a.to_string() + "@12", expected, actual,
              Basis::IndependentOracle);
  }
}

// Pairs of names with pointwise meet zero.
std::pair<Name, Name> disjoint_pair(Rng& rng) {
  switch (rng.below(3)) {
    case 0: {
      Clopen q = random_clopen(rng, 5, 3);
      return {and_const(random_name(rng, 2, false), q), and_const(random_name(rng, 2, false), ~q)};
    }
    case 1: {
      std::string s = random_bits(rng, 0, 2);
      Name base = random_name(rng, 1, false);
      return {pointwise(BoolOp::Meet, make_Ms(s + "0"), base), make_Ms(s + "1")};
    }
    default: {
      Name a = random_name(rng, 2, false);
      Name b = random_name(rng, 2, false);
      return {pointwise(BoolOp::Meet, a, pointwise(BoolOp::Complement, b)),
              and_const(b, random_clopen(rng, 5, 3))};
    }
  }
}

void suite_additivity(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  const std::vector<Coord> s6{0, 1, 2, 3, 4, 5};
  std::vector<Clopen> minterms;
  for (std::size_t a = 0; a < 64; ++a) {
    Clopen c = Clopen::one();
    for (std::size_t j = 0; j < 6; ++j) c &= Clopen::literal(s6[j], (a >> j) & 1);
    minterms.push_back(c);
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto [m, n] = disjoint_pair(rng);
    std::vector<Clopen> extra;
    for (int e = 0; e < 6; ++e) extra.push_back(random_clopen(rng, 5, 6));
    Name join = pointwise(BoolOp::Join, m, n);
    std::string input = name_text(m) + " ; " + name_text(n);
    rec.guard("pair/" + pad(i), input, [&] {
      bool disjoint = true;
      for (std::uint64_t k = 0; k <= cfg.window; ++k) disjoint &= m.eval(k).disjoint(n.eval(k));
      Density dm = unconditional_density(m), dn = unconditional_density(n), dj = unconditional_density(join);
      bool additive = true, dominated = dj.max_value() <= Dyadic(1) && dm.max_value() <= Dyadic(1) &&
                                          dn.max_value() <= Dyadic(1);
      for (const auto& b : minterms) {
        Dyadic ij = dj.integral(b);
        additive &= ij == dm.integral(b) + dn.integral(b);
        dominated &= ij <= b.measure();
      }
      bool matches_limit = true;
      for (const auto& b : extra) {
        Dyadic ij = dj.integral(b);
        additive &= ij == dm.integral(b) + dn.integral(b);
        dominated &= ij <= b.measure();
        MeasureValue lim = tail_limit(join, b, cfg.window);
        matches_limit &= lim.is_exact() && lim.exact().value == ij;
      }
      bool cellwise = true;
      for (std::size_t a = 0; a < dj.cells.size(); ++a)
        for (std::size_t b = 0; b < dm.cells.size(); ++b)
          for (std::size_t c = 0; c < dn.cells.size(); ++c)
            if (!(dj.cells[a] & dm.cells[b] & dn.cells[c]).is_zero())
              cellwise &= dj.values[a] == dm.values[b] + dn.values[c];
      Json actual;
      actual["disjoint"] = disjoint;
      actual["additive"] = additive;
      actual["cellwise"] = cellwise;
      actual["dominated"] = dominated;
      actual["matches_limit"] = matches_limit;
      Json expected = actual;
      for (auto& [k, v] : expected.items()) v = true;
      rec.equal("pair/" + pad(i), input, expected, actual, Basis::Property);
    });
  }
  rec.note("integrals are checked on the 64 minterms over {0..5}, which span every clopen on those coordinates "
           "by additivity in B, plus seeded random B");
  auto dv = unconditional_density(constant_name(Clopen::parse("x0 & !x2")));
  std::uint64_t ok = 0;
  for (const auto& b : enumerate_clopens({0, 1, 2})) ok += dv.integral(b) == (Clopen::parse("x0 & !x2") & b).measure();
  rec.tally("example/vec", "density(vec[x0 & !x2]) over all B on {0,1,2}", 256, ok, Basis::IndependentOracle);
  rec.equal("example/density-leq", "Ms:11 vs Ms:1", true,
            density_leq(unconditional_density(make_Ms("11")), unconditional_density(make_Ms("1"))),
            Basis::StatedValue);
  rec.equal("example/density-leq-fails", "5/8 vs 1/2", false,
            density_leq(Density::constant(Dyadic(5, 3)), Density::constant(Dyadic(1, 1))), Basis::Identity);
}

void suite_oracle_laws(Recorder& rec, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<ProfiniteThread> threads{cfg.thread};
  threads.push_back(cfg.thread.kind() == ProfiniteThread::Kind::Zero ? ProfiniteThread::factorial_digits({1, 2, 3, 4})
                                                                      : ProfiniteThread::zero());
  std::vector<EventuallyPeriodicSet> sets;
  for (int i = 0; i < 500; ++i) sets.push_back(random_set(rng));
  for (const auto& t : threads) {
    std::string tk = "thread=" + t.to_string();
    std::uint64_t dich = 0, inter = 0, cof = 0, fin = 0, union_law = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto& x = sets[i];
      const auto& y = sets[(i + 1) % sets.size()];
      dich += oracle_member(t, x) != oracle_member(t, x.complement());
      inter += (oracle_member(t, x) && oracle_member(t, y)) == oracle_member(t, x.intersect(y));
      union_law += (oracle_member(t, x) || oracle_member(t, y)) == oracle_member(t, x.unite(y));
      std::vector<std::uint64_t> members;
      for (int j = 0, n = static_cast<int>(rng.below(6)); j < n; ++j) members.push_back(rng.below(40));
      auto f = EventuallyPeriodicSet::finite(members);
      cof += oracle_member(t, f.complement());
      fin += !oracle_member(t, f);
    }
    rec.tally(tk + "/dichotomy", "500 seeded sets", sets.size(), dich, Basis::Property);
    rec.tally(tk + "/intersection", "500 seeded pairs", sets.size(), inter, Basis::Property);
    rec.tally(tk + "/union", "500 seeded pairs", sets.size(), union_law, Basis::Property);
    rec.tally(tk + "/cofinite", "500 seeded cofinite sets", sets.size(), cof, Basis::Property);
    rec.tally(tk + "/finite", "500 seeded finite sets", sets.size(), fin, Basis::Property);
    std::uint64_t compat = 0;
    std::uint64_t fact = 1;
    for (std::uint32_t n = 1; n < 20; ++n) {
      fact *= n;
      compat += t.factorial_residue(n + 1) % fact == t.factorial_residue(n);
    }
    rec.tally(tk + "/compatible", "r_(n+1) mod n! = r_n for n < 20", 19, compat, Basis::Property);
    // Linearity of limits of step sequences.
    std::uint64_t linear = 0;
    for (int i = 0; i < 100; ++i) {
      auto a = random_set(rng);
      auto b = random_set(rng);
      Dyadic va(BigInt(rng.below(9)), 3), vb(BigInt(rng.below(9)), 3), wa(BigInt(rng.below(5)), 2),
          wb(BigInt(rng.below(5)), 2);
      StepSequence v{{va, a}, {vb, a.complement()}};
      StepSequence w{{wa, b}, {wb, b.complement()}};
      Dyadic alpha(BigInt(rng.below(5)), 2), beta(BigInt(rng.below(5)), 2);
      StepSequence comb;
      for (const auto& [x, xs] : v)
        for (const auto& [y, ys] : w) {
          auto cell = xs.intersect(ys);
          if (cell != EventuallyPeriodicSet::empty()) comb.emplace_back(alpha * x + beta * y, cell);
        }
      linear += limit_along(t, comb) == alpha * limit_along(t, v) + beta * limit_along(t, w);
    }
    rec.tally(tk + "/limit-linear", "100 seeded step sequence pairs", 100, linear, Basis::Property);
  }
  const auto& z = ProfiniteThread::zero();
  rec.equal("example/multiples-of-3", "zero thread, mod3:0", true,
            oracle_member(z, EventuallyPeriodicSet::residue_class(3, 0)), Basis::IndependentOracle);
  rec.equal("example/odds", "zero thread, odds", false, oracle_member(z, EventuallyPeriodicSet::parse("odds")),
            Basis::Identity);
  rec.equal("example/limit-evens", "1/2 on evens, 0 on odds", dy(Dyadic(1, 1)),
            dy(limit_along(z, {{Dyadic(1, 1), EventuallyPeriodicSet::parse("evens")},
                               {Dyadic(0), EventuallyPeriodicSet::parse("odds")}})),
            Basis::IndependentOracle);
  bool malformed = false;
  try {
    limit_along(z, {{Dyadic(1), EventuallyPeriodicSet::parse("evens")}, {Dyadic(0), EventuallyPeriodicSet::all()}});
  } catch (const Error& e) {
    malformed = e.kind() == ErrorKind::MalformedSequence;
  }
  rec.equal("example/malformed", "overlapping level sets", true, malformed, Basis::Identity);
  MeasureValue nv = nu(indicator_name(EventuallyPeriodicSet::parse("evens")), z, cfg.window);
  rec.equal("example/nu-evens", "nu(check[evens])", dy(Dyadic(1)), nv.is_exact() ? dy(nv.exact().value) : Json(),
            Basis::IndependentOracle);
  Clopen b34 = Clopen::parse("x0 | x1");
  MeasureValue lv = tail_limit(indicator_name(EventuallyPeriodicSet::residue_class(3, 0)), b34, cfg.window);
  Json resolved;
  if (lv.kind() == MeasureValue::Kind::Conditional)
    for (const auto& br : lv.conditional().branches)
      if (br.answers == std::vector<bool>{oracle_member(z, lv.conditional().queries[0])})
        resolved = dy(br.value.value);
  rec.equal("example/rho-extends", "check[mod3:0] against x0|x1", dy(Dyadic(3, 2)), resolved, Basis::StatedValue);
}

void suite_borel_cantelli(Recorder& rec, const SuiteConfig& cfg) {
  auto evens = EventuallyPeriodicSet::parse("evens");
  auto all = EventuallyPeriodicSet::all();
  Schedule half = Schedule::constant(Dyadic(1, 1));
  auto v = borel_cantelli_verdict(half, evens);
  rec.equal("const-half/evens/kind", "const(1/2) on evens", "Divergent", std::string(to_string(v.kind())),
            Basis::IndependentOracle);
  rec.equal("const-half/evens/N", "N(2^-20)", 40, v.certificate(Dyadic::pow2(-20)), Basis::IndependentOracle);
  Name fresh = fresh_independent(half);
  rec.equal("const-half/evens/prefix-join", "prefix_join_measure(0, 40)", dy(Dyadic(1) - Dyadic::pow2(-20)),
            dy(prefix_join_measure(fresh, evens, 0, 40)), Basis::IndependentOracle);
  Clopen join;
  for (std::uint64_t k = 2; k <= 40; k += 2) join |= fresh.eval(k);
  rec.equal("const-half/evens/bdd-join", "explicit join of blocks 2..40", dy(Dyadic(1) - Dyadic::pow2(-20)),
            dy(join.measure()), Basis::IndependentOracle);

  Schedule geo = Schedule::geometric(0);
  for (const auto& [label, x] : std::vector<std::pair<std::string, EventuallyPeriodicSet>>{
           {"all", all}, {"evens", evens}, {"mod3:1", EventuallyPeriodicSet::residue_class(3, 1)}}) {
    auto g = borel_cantelli_verdict(geo, x);
    rec.equal("geom0/" + label + "/kind", "geom(0) on " + label, "Convergent", std::string(to_string(g.kind())),
              Basis::IndependentOracle);
    std::uint64_t ok = 0;
    for (std::uint64_t n = 0; n <= 20; ++n) {
      // Exact sum over k in X, k > n, of 2^-k: each residue class r mod p
      // starting at its first member m contributes 2^-m / (1 - 2^-p).
      Rational exact = 0;
      for (std::uint64_t k = n + 1; k < x.threshold(); ++k)
        if (x.contains(k)) exact += Rational(1, BigInt(1) << k);
      std::uint64_t p = x.period();
      for (std::uint64_t r : x.residues()) {
        std::uint64_t m = std::max<std::uint64_t>(n + 1, x.threshold());
        while (m % p != r) ++m;
        exact += Rational(1, BigInt(1) << m) / (Rational(1) - Rational(1, BigInt(1) << p));
      }
      Dyadic bound = g.tail_bound(n);
      ok += compare(bound, exact) >= 0 && bound <= Dyadic::pow2(-static_cast<std::int64_t>(n));
    }
    rec.tally("geom0/" + label + "/tail", "exact sums <= tail(n) <= 2^-n, n <= 20", 21, ok, Basis::IndependentOracle);
  }
  auto pd = borel_cantelli_verdict(Schedule::power_decay(), all);
  rec.equal("power/all/kind", "power on all", "Divergent", std::string(to_string(pd.kind())), Basis::IndependentOracle);
  rec.equal("power/at-6", "a_6 of power", dy(Dyadic(1, 2)), dy(fresh_independent(Schedule::power_decay()).eval(6).measure()),
            Basis::IndependentOracle);
  bool unclassifiable = false;
  try {
    borel_cantelli_verdict(Schedule::explicit_list({Dyadic(1, 1)}), all);
  } catch (const Error& e) {
    unclassifiable = e.kind() == ErrorKind::Unclassifiable;
  }
  rec.equal("explicit/no-tail", "explicit(1/2)", true, unclassifiable, Basis::Identity);
  rec.equal("example/seven-eighths", "const(1/2), all, 0 < k <= 3", dy(Dyadic(7, 3)),
            dy(prefix_join_measure(fresh, all, 0, 3)), Basis::IndependentOracle);
  rec.equal("example/empty-range", "const(1/2), all, 5 < k <= 5", dy(Dyadic(0)),
            dy(prefix_join_measure(fresh, all, 5, 5)), Basis::Identity);

  // Joint independence of fresh blocks.
  for (const Schedule& s : {half, Schedule::power_decay(), Schedule::geometric(1),
                            Schedule::explicit_list({Dyadic(3, 2), Dyadic(5, 3)}, Schedule::constant(Dyadic(3, 3)))}) {
    Name m = fresh_independent(s);
    std::vector<Clopen> blocks;
    for (std::uint64_t k = 0; k <= 8; ++k) blocks.push_back(m.eval(k));
    std::uint64_t ok = 0;
    for (std::uint32_t mask = 0; mask < (1u << blocks.size()); ++mask) {
      Clopen meet = Clopen::one();
      Dyadic prod(1);
      for (std::size_t k = 0; k < blocks.size(); ++k)
        if ((mask >> k) & 1) {
          meet &= blocks[k];
          prod *= s.at(k);
        }
      ok += meet.measure() == prod;
    }
    rec.tally("independence/" + s.to_string(), "all subsets of blocks 0..8", 1u << blocks.size(), ok,
              Basis::IndependentOracle);
    std::uint64_t pair_ok = 0;
    for (std::uint64_t j = 0; j <= 16; ++j)
      for (std::uint64_t k = 0; k <= 16; ++k)
        pair_ok += j == k || (m.eval(j) & m.eval(k)).measure() == s.at(j) * s.at(k);
    rec.tally("pairs/" + s.to_string(), "pairs j, k <= 16", 17 * 17, pair_ok, Basis::IndependentOracle);
    std::uint64_t mono = 0, prod_ok = 0;
    for (std::uint64_t n = 0; n < 12; ++n) {
      Dyadic prod(1);
      for (std::uint64_t k = 1; k <= n + 1; ++k)
        if (evens.contains(k)) prod *= Dyadic(1) - s.at(k);
      mono += prefix_join_measure(m, evens, 0, n) <= prefix_join_measure(m, evens, 0, n + 1) &&
              prefix_join_measure(m, evens, 0, n) <= prefix_join_measure(m, all, 0, n);
      prod_ok += Dyadic(1) - prefix_join_measure(m, evens, 0, n + 1) == prod;
    }
    rec.tally("monotone/" + s.to_string(), "N < 12, evens within all", 12, mono, Basis::Property);
    rec.tally("product/" + s.to_string(), "complement equals the product", 12, prod_ok, Basis::IndependentOracle);
  }
  (void)cfg;
}

Name ones(std::size_t n) { return make_Ms(std::string(n, '1')); }

void suite_ap1(Recorder& rec, const SuiteConfig& cfg) {
  std::vector<Name> chain;
  for (std::size_t n = 0; n <= 8; ++n) chain.push_back(ones(n));
  auto res = ap1_diagonalize(chain, cfg.thread, cfg.window);
  const auto& rep = res.report;
  for (std::size_t n = 0; n < chain.size(); ++n) {
    const auto& v = rep.below[n];
    std::uint64_t t = v.kind == LeqKind::Always ? 0 : v.threshold;
    Json expected;
    expected["kind"] = "Eventually";
    expected["threshold"] = rep.cuts[n];
    Json actual = to_json(v);
    bool pass = (v.kind == LeqKind::Always || v.kind == LeqKind::Eventually) && t == rep.cuts[n];
    rec.check("ones/below/" + pad(n, 2), "M <=* M_" + std::to_string(n), expected, actual, Basis::StatedValue, pass);
  }
  std::uint64_t seg_ok = 0;
  for (std::uint64_t k = 0; k < rep.window_values.size(); ++k) {
    std::int64_t seg = rep.segment[k];
    Dyadic want = seg < 0 ? Dyadic(1) : Dyadic::pow2(-seg);
    seg_ok += rep.window_values[k] == want;
  }
  rec.tally("ones/segments", "measure(M(k)) = 2^-n_k on the window", rep.window_values.size(), seg_ok,
            Basis::IndependentOracle);
  std::uint64_t lim_ok = 0;
  for (std::size_t n = 0; n < chain.size(); ++n) lim_ok += rep.limits[n] == Dyadic::pow2(-static_cast<std::int64_t>(n));
  rec.tally("ones/limits", "r_n = 2^-n", chain.size(), lim_ok, Basis::StatedValue);
  bool increasing = true;
  for (std::size_t n = 0; n < rep.cuts.size(); ++n) {
    increasing &= rep.cuts[n] >= n;
    if (n > 0) increasing &= rep.cuts[n] > rep.cuts[n - 1];
  }
  rec.equal("ones/cuts", "l_(n+1) > l_n >= n", true, increasing, Basis::StatedValue);

  std::vector<Name> half;
  for (std::size_t n = 0; n <= 8; ++n) half.push_back(sliding_union_name({"0", "1" + std::string(n, '1')}));
  auto hr = ap1_diagonalize(half, cfg.thread, cfg.window);
  Dyadic dist = hr.report.final_value - Dyadic(1, 1);
  if (dist.sign() < 0) dist = -dist;
  Json actual;
  actual["final"] = dy(hr.report.final_value);
  actual["distance"] = dy(dist);
  rec.check("half/final", "|final window value - 1/2| <= 2^-9", "within 2^-9", actual, Basis::IndependentOracle,
            dist <= Dyadic::pow2(-9));
  std::uint64_t lim_ok2 = 0;
  for (std::size_t n = 0; n < half.size(); ++n)
    lim_ok2 += hr.report.limits[n] == Dyadic(1, 1) + Dyadic::pow2(-static_cast<std::int64_t>(n) - 1);
  rec.tally("half/limits", "r_n = 1/2 + 2^-(n+1)", half.size(), lim_ok2, Basis::IndependentOracle);
  std::uint64_t bounded = 0;
  const Dyadic& r_last = hr.report.limits.back();
  for (std::uint64_t k = 0; k < hr.report.window_values.size(); ++k) {
    std::int64_t seg = hr.report.segment[k];
    Dyadic seg_bound = seg < 0 ? Dyadic(1) : hr.report.limits[static_cast<std::size_t>(seg)];
    bounded += r_last <= hr.report.window_values[k] && hr.report.window_values[k] <= seg_bound;
  }
  rec.tally("half/bounded", "r_T <= window value <= segment limit", hr.report.window_values.size(), bounded,
            Basis::Property);

  Name m = sliding_union_name({"01", "1"});
  auto cr = ap1_diagonalize({m, m, m}, cfg.thread, cfg.window);
  std::uint64_t same = 0, total = 0;
  for (std::uint64_t k = cr.report.cuts[0]; k <= cfg.window; ++k, ++total) same += cr.name.eval(k) == m.eval(k);
  rec.tally("constant/equal", "(M, M, M) beyond l_0", total, same, Basis::Identity);
  rec.note(rep.note);
}

void suite_fullness(Recorder& rec, const SuiteConfig& cfg) {
  auto all = EventuallyPeriodicSet::all();
  Name fresh = fresh_independent(Schedule::constant(Dyadic(1, 1)));
  auto v = is_full(fresh, Clopen::one(), all, default_certificate_eps(), cfg.window);
  rec.equal("const-half/kind", "indep:const(1/2), p=1, all", "Full", std::string(to_string(v.kind)),
            Basis::IndependentOracle);
  const std::vector<std::uint64_t> want{5, 10, 20};
  for (std::size_t i = 0; i < v.table.size() && i < want.size(); ++i) {
    Json expected;
    expected["N"] = want[i];
    expected["residual"] = dy(Dyadic::pow2(-static_cast<std::int64_t>(want[i]) - 1));
    Json actual;
    actual["N"] = v.table[i].n;
    actual["residual"] = dy(v.table[i].residual);
    rec.equal("const-half/eps=2^-" + pad(want[i], 2), "certificate", expected, actual, Basis::IndependentOracle);
    rec.equal("const-half/eps=2^-" + pad(want[i], 2) + "/residual", "direct residual at N",
              dy(Dyadic::pow2(-static_cast<std::int64_t>(want[i]) - 1)),
              dy(fullness_residual(fresh, Clopen::one(), all, v.table[i].n)), Basis::IndependentOracle);
  }
  auto from3 = EventuallyPeriodicSet::tail_from(3);
  auto vv = is_full(constant_name(Clopen::one()), Clopen::var(4), from3, default_certificate_eps(), cfg.window);
  rec.equal("vec1/N", "vec[1], p=x4, from:3", Json::array({3, 3, 3}),
            [&] {
              Json a = Json::array();
              for (const auto& row : vv.table) a.push_back(row.n);
              return a;
            }(),
            Basis::Identity);
  Clopen j = Clopen::parse("x0 & x1");
  Name zt = Name::atom({j, Clopen::parse("x0 & !x1"), Clopen::zero()}, ZeroTail{});
  Clopen p = Clopen::parse("x0");
  auto nf = is_full(zt, p, EventuallyPeriodicSet::finite({0}).unite(EventuallyPeriodicSet::tail_from(3)),
                    default_certificate_eps(), cfg.window);
  Json nfe;
  nfe["kind"] = "NotFull";
  Json nfa;
  nfa["kind"] = std::string(to_string(nf.kind));
  nfa["residual"] = dy(nf.residual);
  nfe["residual"] = dy((p - j).measure());
  rec.equal("zero-tail/not-full", "prefix (x0&x1, x0&!x1, 0) then 0; p=x0; X={0} u from:3", nfe, nfa,
            Basis::IndependentOracle);
  std::uint64_t stable = 0;
  for (std::uint64_t n = 0; n < 20; ++n)
    stable += fullness_residual(zt, p, EventuallyPeriodicSet::finite({0}).unite(from3), n) >= nf.residual;
  rec.tally("zero-tail/residual-floor", "residual(N) >= limit for N < 20", 20, stable, Basis::Property);

  auto evens = EventuallyPeriodicSet::parse("evens");
  auto sl = is_full(make_Ms("1"), Clopen::var(0), evens, default_certificate_eps(), cfg.window);
  rec.equal("sliding/evens", "Ms:1, p=x0, evens", "Full", std::string(to_string(sl.kind)), Basis::IndependentOracle);
  auto sl_all = is_full(make_Ms("1"), Clopen::var(0), all, default_certificate_eps(), cfg.window);
  bool mono = sl_all.kind == FullnessVerdict::Kind::Full;
  for (std::size_t i = 0; i < sl.table.size(); ++i) mono &= sl_all.table[i].n <= sl.table[i].n;
  rec.equal("sliding/monotone", "enlarging X keeps Full and shrinks N", true, mono, Basis::Property);
  for (const auto& row : sl.table) {
    bool ok = compare(fullness_residual(make_Ms("1"), Clopen::var(0), evens, row.n), row.eps) < 0;
    rec.equal("sliding/evens/eps=" + rational_to_string(row.eps), "residual below eps at N", true, ok,
              Basis::Property);
  }
  auto pw = is_full(fresh_independent(Schedule::power_decay()), Clopen::one(), all, {Rational(1, 4)}, cfg.window);
  rec.equal("power/full", "indep:power, p=1, all", "Full", std::string(to_string(pw.kind)), Basis::IndependentOracle);
  auto gm = is_full(fresh_independent(Schedule::geometric(1)), Clopen::one(), all, {}, 16);
  rec.equal("geom/unknown", "indep:geom(1), p=1, all", "Unknown", std::string(to_string(gm.kind)), Basis::Property);
  bool zero_error = false;
  try {
    is_full(fresh, Clopen::zero(), all);
  } catch (const Error& e) {
    zero_error = e.kind() == ErrorKind::ZeroCondition;
  }
  rec.equal("zero-condition", "p = 0", true, zero_error, Basis::Identity);

  // C_n membership.
  auto cn1 = cn_check(fresh, Clopen::one(), 3, all, 30);
  rec.equal("cn/omega", "X = all", "InCnUpTo", cn1.in_cn ? "InCnUpTo" : "NotInCn", Basis::StatedValue);
  Clopen q = Clopen::parse("x1 | x2");
  auto cn2 = cn_check(constant_name(q), q, 2, EventuallyPeriodicSet::all().intersect(
                                                  EventuallyPeriodicSet::finite({4}).complement()), 10);
  Json cn2a;
  cn2a["kind"] = cn2.in_cn ? "InCnUpTo" : "NotInCn";
  cn2a["joined"] = dy(cn2.joined);
  Json cn2e;
  cn2e["kind"] = "NotInCn";
  cn2e["joined"] = dy(q.measure());
  rec.equal("cn/vec-missing-one", "E=vec[q], p=q, X misses 4", cn2e, cn2a, Basis::IndependentOracle);
  auto cn3 = cn_check(fresh_independent(Schedule::geometric(2)), Clopen::one(), 1, evens, 28);
  Json cn3a;
  cn3a["kind"] = cn3.in_cn ? "InCnUpTo" : "NotInCn";
  cn3a["below_quarter"] = cn3.joined < Dyadic(1, 2);
  Json cn3e;
  cn3e["kind"] = "InCnUpTo";
  cn3e["below_quarter"] = true;
  rec.equal("cn/geom-odds", "E=indep:geom(2), p=1, X=evens, n=1", cn3e, cn3a, Basis::IndependentOracle);

  // Splicing a decreasing chain of full names along its certificates.
  std::vector<Name> es;
  for (std::size_t n = 0; n <= 4; ++n) es.push_back(ones(n));
  IntervalPartition part = canonical_partition(es, Clopen::var(0), evens);
  Name e = splice(part, es);
  auto ev = is_full(e, Clopen::var(0), evens, default_certificate_eps(), cfg.window);
  rec.equal("chain/spliced-full", "splice of Ms:1^n along " + part.to_string(), "Full",
            std::string(to_string(ev.kind)), Basis::StatedValue);
  rec.note("fullness is checked for the supplied witness sets only");
}

void suite_splice(Recorder& rec, const SuiteConfig& cfg) {
  IntervalPartition part({0, 3, 7, 15});
  std::vector<Name> es;
  for (std::size_t n = 0; n < 4; ++n) es.push_back(ones(n));
  Name e = splice(part, es);
  std::uint64_t ok = 0, meas = 0;
  for (std::uint64_t k = 0; k <= cfg.window; ++k) {
    std::size_t n = std::min(part.index_of(k), es.size() - 1);
    ok += e.eval(k) == es[n].eval(k);
    meas += e.eval(k).measure() == Dyadic::pow2(-static_cast<std::int64_t>(n));
  }
  rec.tally("chain/identity", "eval(E,k) = eval(E_n(k),k), k <= window", cfg.window + 1, ok, Basis::StatedValue);
  rec.tally("chain/measure", "measure 2^-n on I_n", cfg.window + 1, meas, Basis::IndependentOracle);
  for (std::size_t n = 0; n < es.size(); ++n) {
    auto v = leq_name(e, es[n], cfg.window);
    std::uint64_t t = v.kind == LeqKind::Always ? 0 : v.threshold;
    Json expected;
    expected["kind"] = "Eventually";
    expected["threshold"] = part.cuts()[n];
    rec.check("chain/below/" + pad(n, 2), "E <=* E_" + std::to_string(n), expected, to_json(v), Basis::StatedValue,
              (v.kind == LeqKind::Always || v.kind == LeqKind::Eventually) && t == part.cuts()[n]);
  }
  Name a = make_Ms("01"), b = indicator_name(EventuallyPeriodicSet::parse("odds"));
  Name ab = splice(IntervalPartition({0, 3, 7}), {a, b});
  rec.equal("example/k=2", "cuts (0,3,7), (A,B) at 2", a.eval(2).to_string(), ab.eval(2).to_string(),
            Basis::StatedValue);
  rec.equal("example/k=5", "cuts (0,3,7), (A,B) at 5", b.eval(5).to_string(), ab.eval(5).to_string(),
            Basis::StatedValue);
  Name same = splice(part, {a, a, a, a});
  std::uint64_t eq = 0;
  for (std::uint64_t k = 0; k <= cfg.window; ++k) eq += same.eval(k) == a.eval(k);
  rec.tally("example/all-equal", "(A, A, A, A)", cfg.window + 1, eq, Basis::Identity);
  bool mismatch = false;
  try {
    splice(part, {a});
  } catch (const Error& err) {
    mismatch = err.kind() == ErrorKind::LengthMismatch;
  }
  rec.equal("error/length", "4 intervals, 1 name", true, mismatch, Basis::Identity);
  Rng rng(cfg.seed);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::uint64_t> cuts{0};
    for (int j = 0, n = 1 + static_cast<int>(rng.below(4)); j < n; ++j) cuts.push_back(cuts.back() + 1 + rng.below(9));
    std::vector<Name> pieces;
    for (std::size_t j = 0; j < cuts.size(); ++j) pieces.push_back(random_name(rng, 2, true));
    Name sp = splice(IntervalPartition(cuts), pieces);
    std::uint64_t good = 0;
    for (std::uint64_t k = 0; k <= cfg.window; ++k)
      good += sp.eval(k) == pieces[IntervalPartition(cuts).index_of(k)].eval(k);
    rec.tally("random/" + pad(static_cast<std::uint64_t>(i), 2), "cuts " + IntervalPartition(cuts).to_string(),
              cfg.window + 1, good, Basis::Property);
  }
}

using SuiteFn = void (*)(Recorder&, const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"algebra-laws", suite_algebra_laws}, {"homodot", suite_homodot},       {"restr-incl", suite_restr_incl},
      {"ms-measure", suite_ms_measure},     {"partition", suite_partition},   {"gm-reals", suite_gm_reals},
      {"additivity", suite_additivity},     {"oracle-laws", suite_oracle_laws}, {"borel-cantelli", suite_borel_cantelli},
      {"ap1", suite_ap1},                   {"fullness", suite_fullness},     {"splice", suite_splice},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

SuiteReport run_suite(std::string_view id, const SuiteConfig& config) {
  for (const auto& [name, fn] : registry()) {
    if (name != id) continue;
    SuiteReport report;
    report.suite = name;
    report.config = config;
    Recorder rec(report);
    auto t0 = std::chrono::steady_clock::now();
    rec.guard("suite", name, [&] { fn(rec, config); });
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }
  throw Error(ErrorKind::Usage, "unknown suite '" + std::string(id) + "'");
}

}  // namespace cantorlab
