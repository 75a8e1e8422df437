#include <doctest.h>

#include "cantorlab/canjar.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/filters.hpp"
#include "cantorlab/solovay.hpp"
#include "support.hpp"

using namespace cantorlab;

namespace {

Name ones(std::size_t n) { return make_Ms(std::string(n, '1')); }

}  // namespace

TEST_CASE("fullness of the constant-half blocks") {
  Name m = fresh_independent(Schedule::constant(Dyadic(1, 1)));
  auto all = EventuallyPeriodicSet::all();
  auto v = is_full(m, Clopen::one(), all, {Rational(1, 32), Rational(1, 1024), Rational(1, 1 << 20)});
  REQUIRE(v.kind == FullnessVerdict::Kind::Full);
  REQUIRE(v.table.size() == 3);
  const std::uint64_t want[] = {5, 10, 20};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(v.table[i].n == want[i]);
    CHECK(v.table[i].residual == Dyadic::pow2(-static_cast<std::int64_t>(want[i]) - 1));
    // Minimality: one index earlier the residual is not below eps.
    CHECK(compare(fullness_residual(m, Clopen::one(), all, want[i] - 1), v.table[i].eps) >= 0);
  }
}

TEST_CASE("fullness of constant names") {
  auto x = EventuallyPeriodicSet::parse("eps:T=4;E=;p=3;R=1");
  auto v = is_full(one_name(), Clopen::var(2), x);
  REQUIRE(v.kind == FullnessVerdict::Kind::Full);
  for (const auto& row : v.table) CHECK(row.n == *x.next_member(0));
  auto nf = is_full(constant_name(Clopen::var(0)), Clopen::one(), EventuallyPeriodicSet::all());
  CHECK(nf.kind == FullnessVerdict::Kind::NotFull);
  CHECK(nf.residual == Dyadic(1, 1));
}

TEST_CASE("zero tail with a prefix join") {
  Clopen j = Clopen::parse("x0 & x1");
  Name m = Name::atom({j, Clopen::zero(), Clopen::zero()}, ZeroTail{});
  Clopen p = Clopen::var(0);
  auto v = is_full(m, p, EventuallyPeriodicSet::finite({0}).unite(EventuallyPeriodicSet::tail_from(3)));
  CHECK(v.kind == FullnessVerdict::Kind::NotFull);
  CHECK(v.residual == Dyadic(1, 2));
  CHECK((p - j).measure() == Dyadic(1, 2));
  auto far = is_full(m, p, EventuallyPeriodicSet::tail_from(3));
  CHECK(far.kind == FullnessVerdict::Kind::NotFull);
  CHECK(far.residual == p.measure());
}

TEST_CASE("fullness along sparse sets") {
  auto v = is_full(make_Ms("1"), Clopen::var(0), EventuallyPeriodicSet::parse("mod5:2"));
  REQUIRE(v.kind == FullnessVerdict::Kind::Full);
  for (const auto& row : v.table) {
    CHECK(compare(row.residual, row.eps) < 0);
    CHECK(row.residual == fullness_residual(make_Ms("1"), Clopen::var(0), EventuallyPeriodicSet::parse("mod5:2"), row.n));
  }
  // Empty at every index of X.
  auto w = is_full(indicator_name(EventuallyPeriodicSet::parse("evens")), Clopen::one(),
                   EventuallyPeriodicSet::parse("odds"));
  CHECK(w.kind == FullnessVerdict::Kind::NotFull);
  CHECK(w.residual == Dyadic(1));
  CHECK(is_full(fresh_independent(Schedule::power_decay()), Clopen::one(), EventuallyPeriodicSet::all(),
                {Rational(1, 8)})
            .kind == FullnessVerdict::Kind::Full);
  CHECK(error_kind([] { is_full(one_name(), Clopen::zero(), EventuallyPeriodicSet::all()); }) == ErrorKind::ZeroCondition);
}

TEST_CASE("certificates") {
  Name m = fresh_independent(Schedule::constant(Dyadic(1, 1)));
  auto row = full_certificate(m, Clopen::one(), EventuallyPeriodicSet::parse("evens"), Rational(1, 1000));
  // (1/2)^(n/2 + 1) < 1/1000 at n = 18.
  CHECK(row.n == 18);
  CHECK(error_kind([] {
          full_certificate(zero_name(), Clopen::one(), EventuallyPeriodicSet::all(), Rational(1, 2));
        }) == ErrorKind::BoundExceeded);
}

TEST_CASE("C_n membership") {
  Name e = fresh_independent(Schedule::constant(Dyadic(1, 1)));
  auto all = cn_check(e, Clopen::one(), 3, EventuallyPeriodicSet::all(), 50);
  CHECK(all.in_cn);
  CHECK(all.upto == 50);
  CHECK(all.joined == Dyadic(0));

  Clopen p = Clopen::parse("x1 | x2");
  auto miss = cn_check(constant_name(p), p, 2, EventuallyPeriodicSet::finite({4}).complement(), 10);
  CHECK_FALSE(miss.in_cn);
  CHECK(miss.witness == 4);
  CHECK(miss.joined == p.measure());
  CHECK(miss.bound == Rational(3, 4) - Rational(1, 3));

  auto geo = cn_check(fresh_independent(Schedule::geometric(2)), Clopen::one(), 1, EventuallyPeriodicSet::parse("evens"), 28);
  CHECK(geo.in_cn);
  CHECK(geo.joined < Dyadic(1, 2));
  CHECK(geo.bound == Rational(1, 2));
}

TEST_CASE("splicing") {
  Name a = make_Ms("01"), b = indicator_name(EventuallyPeriodicSet::parse("odds"));
  Name s = splice(IntervalPartition({0, 3, 7}), {a, b});
  CHECK(s.eval(2) == a.eval(2));
  CHECK(s.eval(5) == b.eval(5));
  CHECK(s.eval(9) == b.eval(9));
  Name same = splice(IntervalPartition({0, 3, 7, 15}), {a, a, a, a});
  for (std::uint64_t k = 0; k < 40; ++k) CHECK(same.eval(k) == a.eval(k));
  CHECK(error_kind([&] { splice(IntervalPartition({0, 3, 7, 15}), {a}); }) == ErrorKind::LengthMismatch);

  std::vector<Name> es{ones(0), ones(1), ones(2), ones(3)};
  IntervalPartition cuts({0, 3, 7, 15});
  Name e = splice(cuts, es);
  for (std::size_t n = 0; n < es.size(); ++n) {
    auto v = leq_name(e, es[n], 64);
    std::uint64_t t = v.kind == LeqKind::Always ? 0 : v.threshold;
    CHECK(t == cuts.cuts()[n]);
  }
}

TEST_CASE("canonical partition of a full chain") {
  std::vector<Name> es{ones(0), ones(1), ones(2)};
  auto part = canonical_partition(es, Clopen::one(), EventuallyPeriodicSet::all());
  CHECK(part.cuts().front() == 0);
  CHECK(part.interval_count() == 3);
  for (std::size_t i = 1; i < part.cuts().size(); ++i) CHECK(part.cuts()[i] > part.cuts()[i - 1]);
  auto v = is_full(splice(part, es), Clopen::one(), EventuallyPeriodicSet::all());
  CHECK(v.kind == FullnessVerdict::Kind::Full);
  CHECK(error_kind([] {
          canonical_partition({constant_name(Clopen::var(0)), one_name()}, Clopen::one(), EventuallyPeriodicSet::all());
        }) == ErrorKind::Precondition);
}
