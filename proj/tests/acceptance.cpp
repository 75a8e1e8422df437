// Acceptance battery: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "cantorlab/canjar.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/filters.hpp"
#include "cantorlab/solovay.hpp"
#include "cantorlab/suites.hpp"

using namespace cantorlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const CaseRecord* find_case(const SuiteReport& r, const std::string& key) {
  for (const auto& c : r.cases)
    if (c.key == key) return &c;
  return nullptr;
}

void require_suite(Outcome& o, const SuiteReport& r) {
  o.require(!r.cases.empty(), r.suite + " produced no cases");
  o.require(r.passed(), r.suite + ": " + std::to_string(r.failures()) + " failing cases");
}

void require_case(Outcome& o, const SuiteReport& r, const std::string& key) {
  const CaseRecord* c = find_case(r, key);
  o.require(c != nullptr, "missing case " + key);
  if (c) o.require(c->pass, "case " + key + " failed");
}

Name ones(std::size_t n) { return make_Ms(std::string(n, '1')); }

Outcome ms_measure() {
  Outcome o;
  SuiteConfig cfg;
  cfg.seed = 7;
  auto r = run_suite("ms-measure", cfg);
  require_suite(o, r);
  o.require(r.cases.size() == 9982, "expected 9982 (s, B) cases, got " + std::to_string(r.cases.size()));
  o.require(r.cases.size() <= 10000, "case cap exceeded");
  // Spot check outside the suite: every s with |s| <= 4 against B = x0 | x7.
  Clopen b = Clopen::parse("x0 | x7");
  for (std::size_t len = 0; len <= 4; ++len)
    for (std::uint32_t v = 0; v < (1u << len); ++v) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i) s += ((v >> i) & 1) ? '1' : '0';
      auto lim = tail_limit(make_Ms(s), b);
      o.require(lim.is_exact() && lim.exact().value == Dyadic::pow2(-static_cast<std::int64_t>(len)) * Dyadic(3, 2) &&
                    lim.exact().stabilization_index <= 8,
                "Ms:" + s + " against x0 | x7");
    }
  return o;
}

Outcome partition() {
  Outcome o;
  SuiteConfig cfg;
  cfg.depth = 5;
  cfg.window = 64;
  auto r = run_suite("partition", cfg);
  require_suite(o, r);
  for (int n = 0; n <= 5; ++n) {
    std::string p = "n=" + std::string(n < 10 ? "0" : "") + std::to_string(n);
    for (const char* part : {"/size", "/disjoint", "/join-one", "/density"}) require_case(o, r, p + part);
  }
  return o;
}

Outcome gm_reals() {
  Outcome o;
  auto r = run_suite("gm-reals", {});
  require_suite(o, r);
  auto d = unconditional_density(make_Malpha(Rational(5, 8), 8));
  o.require(d.constant_value() && *d.constant_value() == Dyadic(5, 3), "density of alpha = 5/8");
  for (std::uint32_t depth : {6u, 10u, 14u}) {
    auto c = unconditional_density(make_Malpha(Rational(2, 3), depth)).constant_value();
    o.require(c.has_value(), "alpha = 2/3 density not constant");
    if (!c) continue;
    Rational err = c->to_rational() - Rational(2, 3);
    if (err < 0) err = -err;
    o.require(err <= Rational(1, BigInt(1) << depth), "alpha = 2/3 at depth " + std::to_string(depth));
  }
  return o;
}

Outcome additivity() {
  Outcome o;
  auto r = run_suite("additivity", {});
  require_suite(o, r);
  std::size_t pairs = 0;
  for (const auto& c : r.cases)
    if (c.key.rfind("pair/", 0) == 0) ++pairs;
  o.require(pairs == 200, "expected 200 pairs, got " + std::to_string(pairs));
  return o;
}

Outcome algebra() {
  Outcome o;
  SuiteConfig cfg;
  cfg.seed = 42;
  auto r = run_suite("algebra-laws", cfg);
  require_suite(o, r);
  for (const char* key : {"exhaustive/demorgan", "exhaustive/modular", "canon/equality", "canon/rebuild",
                          "random/canon", "random/laws", "dyadic/oracle"})
    require_case(o, r, key);
  const CaseRecord* dy = find_case(r, "dyadic/oracle");
  o.require(dy && dy->expected == "10000 of 10000", "Dyadic oracle pair count");
  const CaseRecord* rc = find_case(r, "random/canon");
  o.require(rc && rc->expected == "1000 of 1000", "random case count");
  return o;
}

Outcome oracle() {
  Outcome o;
  auto r = run_suite("oracle-laws", {});
  require_suite(o, r);
  for (const char* t : {"thread=zero", "thread=digits:1,2,3,4"})
    for (const char* law : {"/dichotomy", "/intersection", "/cofinite", "/finite"})
      require_case(o, r, std::string(t) + law);
  return o;
}

Outcome borel_cantelli() {
  Outcome o;
  auto r = run_suite("borel-cantelli", {});
  require_suite(o, r);
  auto evens = EventuallyPeriodicSet::parse("evens");
  auto v = borel_cantelli_verdict(Schedule::constant(Dyadic(1, 1)), evens);
  o.require(v.kind() == BorelCantelliVerdict::Kind::Divergent, "constant 1/2 on evens is not Divergent");
  o.require(v.certificate(Dyadic::pow2(-20)) == 40, "N(2^-20) != 40");
  o.require(prefix_join_measure(fresh_independent(Schedule::constant(Dyadic(1, 1))), evens, 0, 40) ==
                Dyadic(1) - Dyadic::pow2(-20),
            "prefix join != 1 - 2^-20");
  auto g = borel_cantelli_verdict(Schedule::geometric(0), EventuallyPeriodicSet::all());
  o.require(g.kind() == BorelCantelliVerdict::Kind::Convergent, "geometric is not Convergent");
  for (std::uint64_t n = 0; n <= 20; ++n) {
    // sum_{k > n} 2^-k = 2^-n exactly.
    o.require(g.tail_bound(n) <= Dyadic::pow2(-static_cast<std::int64_t>(n)), "tail bound above 2^-n");
    o.require(g.tail_bound(n) >= Dyadic::pow2(-static_cast<std::int64_t>(n)), "tail bound below the exact sum");
  }
  for (const char* key : {"independence/const(1/2)", "independence/power", "independence/geom(1)"})
    require_case(o, r, key);
  return o;
}

Outcome ap1() {
  Outcome o;
  auto r = run_suite("ap1", {});
  require_suite(o, r);
  std::vector<Name> chain;
  for (std::size_t n = 0; n <= 8; ++n) chain.push_back(ones(n));
  auto res = ap1_diagonalize(chain, ProfiniteThread::zero(), 64);
  o.require(res.name.op() == Name::Op::Atom && std::holds_alternative<Spliced>(res.name.tail()),
            "result is not a spliced name");
  const auto& rep = res.report;
  for (std::size_t n = 0; n < chain.size(); ++n) {
    auto v = leq_name(res.name, chain[n], 64);
    bool ok = (v.kind == LeqKind::Eventually && v.threshold == rep.cuts[n]) ||
              (v.kind == LeqKind::Always && rep.cuts[n] == 0);
    o.require(ok, "leq(M, M_" + std::to_string(n) + ") is not Eventually(l_n)");
  }
  for (std::size_t k = 0; k < rep.window_values.size(); ++k) {
    std::int64_t seg = rep.segment[k];
    o.require(seg >= 0 && rep.window_values[k] == Dyadic::pow2(-seg), "window value at " + std::to_string(k));
  }
  std::vector<Name> half;
  for (std::size_t n = 0; n <= 8; ++n) half.push_back(sliding_union_name({"0", std::string(n + 1, '1')}));
  auto hr = ap1_diagonalize(half, ProfiniteThread::zero(), 64);
  Dyadic dist = hr.report.final_value - Dyadic(1, 1);
  if (dist.sign() < 0) dist = -dist;
  o.require(dist <= Dyadic::pow2(-9), "final value not within 2^-9 of 1/2");
  return o;
}

Outcome fullness_splice() {
  Outcome o;
  auto f = run_suite("fullness", {});
  auto s = run_suite("splice", {});
  require_suite(o, f);
  require_suite(o, s);
  Name m = fresh_independent(Schedule::constant(Dyadic(1, 1)));
  auto v = is_full(m, Clopen::one(), EventuallyPeriodicSet::all(),
                   {Rational(1, 32), Rational(1, 1024), Rational(1, 1 << 20)});
  o.require(v.kind == FullnessVerdict::Kind::Full, "constant 1/2 blocks not Full");
  const std::uint64_t want[] = {5, 10, 20};
  o.require(v.table.size() == 3, "certificate table size");
  for (std::size_t i = 0; i < v.table.size() && i < 3; ++i) {
    o.require(v.table[i].n == want[i], "certificate N");
    Dyadic closed = Dyadic::pow2(-static_cast<std::int64_t>(v.table[i].n) - 1);
    o.require(v.table[i].residual == closed, "residual != (1/2)^(N+1)");
    o.require(fullness_residual(m, Clopen::one(), EventuallyPeriodicSet::all(), v.table[i].n) == closed,
              "recomputed residual");
  }
  IntervalPartition cuts({0, 3, 7, 15});
  std::vector<Name> es;
  for (std::size_t n = 0; n < 4; ++n) es.push_back(ones(n));
  Name e = splice(cuts, es);
  for (std::uint64_t k = 0; k <= 64; ++k)
    o.require(e.eval(k) == es[cuts.index_of(k)].eval(k), "splice identity at " + std::to_string(k));
  for (std::size_t n = 0; n < es.size(); ++n) {
    auto lv = leq_name(e, es[n], 64);
    bool ok = (lv.kind == LeqKind::Eventually && lv.threshold == cuts.cuts()[n]) ||
              (lv.kind == LeqKind::Always && cuts.cuts()[n] == 0);
    o.require(ok, "splice containment for n = " + std::to_string(n));
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& id : suite_ids()) {
    SuiteConfig cfg;
    cfg.seed = 1234;
    std::string a = run_suite(id, cfg).to_json().dump();
    std::string b = run_suite(id, cfg).to_json().dump();
    o.require(a == b, id + " reports differ between runs");
    std::string ta = run_suite(id, cfg).to_tsv();
    std::string tb = run_suite(id, cfg).to_tsv();
    o.require(ta == tb, id + " TSV reports differ between runs");
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  // An optional argument selects a single criterion.
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<Criterion> criteria{
      {1, "ms-measure: exact 2^-|s| * measure(B), bounded stabilization", 30, ms_measure},
      {2, "partition: disjoint, join 1, density 2^-n for n <= 5", 10, partition},
      {3, "gm-reals: 5/8 exact, 2/3 within 2^-d", 5, gm_reals},
      {4, "additivity/domination over 200 disjoint pairs", 60, additivity},
      {5, "algebra laws, canonicity and Dyadic oracle", 30, algebra},
      {6, "ultrafilter laws for two threads", 10, oracle},
      {7, "Borel-Cantelli certificates and independence", 20, borel_cantelli},
      {8, "AP1 diagonalization", 20, ap1},
      {9, "fullness certificates and splicing", 20, fullness_splice},
      {10, "determinism of every suite", 300, determinism},
  };
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    double secs = since(t0);
    if (secs > c.limit_seconds) o.require(false, "took longer than the limit");
    std::printf("%s criterion %2d: %s (%.2fs, limit %.0fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_seconds, o.pass ? "" : ": ", o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 && ran > 0 ? 0 : 1;
}
