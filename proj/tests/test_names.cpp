#include <doctest.h>

#include "cantorlab/error.hpp"
#include "cantorlab/name.hpp"
#include "cantorlab/name_analysis.hpp"
#include "cantorlab/solovay.hpp"
#include "cantorlab/suites.hpp"
#include "support.hpp"

using namespace cantorlab;

TEST_CASE("atom evaluation") {
  CHECK(sliding_name("01").eval(7) == Clopen::cylinder(7, "01"));
  Name ev = indicator_name(EventuallyPeriodicSet::parse("evens"));
  CHECK(ev.eval(4).is_one());
  CHECK(ev.eval(5).is_zero());
  Clopen q = Clopen::parse("x1 & !x4");
  for (std::uint64_t k : {0u, 3u, 90u}) CHECK(constant_name(q).eval(k) == q);
  CHECK(zero_name().eval(3).is_zero());
  CHECK(one_name().eval(3).is_one());
  Name u = sliding_union_name({"0", "100"});
  CHECK(u.eval(2) == (Clopen::cylinder(2, "0") | Clopen::cylinder(2, "100")));
}

TEST_CASE("prefix overrides the tail rule") {
  Name m = Name::atom({Clopen::var(9), Clopen::zero()}, SlidingPattern{"1"});
  CHECK(m.eval(0) == Clopen::var(9));
  CHECK(m.eval(1).is_zero());
  CHECK(m.eval(2) == Clopen::var(2));
}

TEST_CASE("fresh blocks") {
  Name m = fresh_name(Schedule::constant(Dyadic(1, 1)));
  FreshLayout layout;
  for (std::uint64_t k = 0; k < 10; ++k) {
    Clopen b = m.eval(k);
    CHECK(b.measure() == Dyadic(1, 1));
    auto s = b.support();
    CHECK(s.front() >= layout.block_start(k));
    CHECK(s.back() < layout.block_start(k) + layout.width);
  }
  CHECK(fresh_name(Schedule::power_decay()).eval(6).measure() == Dyadic(1, 2));
  CHECK_THROWS_AS(fresh_name(Schedule::geometric(0)).eval(40), Error);
}

TEST_CASE("pointwise operations") {
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    Name m = random_name(rng, 3, true);
    Name mc = pointwise(BoolOp::Meet, m, pointwise(BoolOp::Complement, m));
    for (std::uint64_t k = 0; k < 30; ++k) {
      CHECK(mc.eval(k).is_zero());
      CHECK(and_const(m, Clopen::one()).eval(k) == m.eval(k));
      CHECK(and_const(m, Clopen::zero()).eval(k).is_zero());
    }
  }
  Name a = sliding_name("0"), b = sliding_name("1");
  for (std::uint64_t k = 0; k < 30; ++k) {
    CHECK(pointwise(BoolOp::Meet, a, b).eval(k).is_zero());
    CHECK(pointwise(BoolOp::Join, a, b).eval(k).is_one());
    CHECK(pointwise(BoolOp::Diff, a, b).eval(k) == a.eval(k));
  }
  Name ac = and_const(sliding_name("1"), Clopen::cylinder(0, "1"));
  CHECK(ac.eval(0) == Clopen::cylinder(0, "1"));
  CHECK(ac.eval(3).measure() == Dyadic(1, 2));
  CHECK_THROWS_AS(pointwise(BoolOp::Meet, a), Error);
}

TEST_CASE("atom validation") {
  CHECK_THROWS_AS(sliding_name("012"), Error);
  CHECK_THROWS_AS(sliding_union_name({"0", "01"}), Error);
  CHECK(error_kind([] { spliced_name(IntervalPartition({0, 3, 7}), {one_name()}); }) == ErrorKind::LengthMismatch);
  CHECK(error_kind([] { spliced_name(IntervalPartition({0, 3}), {one_name(), zero_name()}); }) == std::nullopt);
}

TEST_CASE("incompatible strings") {
  CHECK(incompatible("0", "1"));
  CHECK(incompatible("10", "11"));
  CHECK_FALSE(incompatible("1", "10"));
  CHECK_FALSE(incompatible("", "0"));
}

TEST_CASE("leq_name examples") {
  auto v = leq_name(sliding_name("10"), sliding_name("1"), 64);
  CHECK(v.kind == LeqKind::Always);
  CHECK(v.proof == "pattern-extension");
  auto w = leq_name(sliding_name("1"), sliding_name("0"), 64);
  CHECK(w.kind == LeqKind::No);
  CHECK(w.witness == 0);
  // Equal from index 4 on.
  Name m = Name::atom({Clopen::one(), Clopen::one(), Clopen::zero(), Clopen::one()}, SlidingPattern{"1"});
  auto e = leq_name(m, sliding_name("1"), 64);
  CHECK(e.kind == LeqKind::Eventually);
  CHECK(e.threshold == 4);
  CHECK(leq_name(zero_name(), m, 64).kind == LeqKind::Always);
}

TEST_CASE("leq_name agrees with evaluation") {
  Rng rng(21);
  for (int i = 0; i < 80; ++i) {
    Name m = random_name(rng, 2, true);
    Name n = random_name(rng, 2, true);
    auto v = leq_name(m, n, 64);
    if (v.kind == LeqKind::Unknown) continue;
    for (std::uint64_t k = 0; k < 80; ++k) {
      bool holds = m.eval(k).leq(n.eval(k));
      if (v.kind == LeqKind::Always) CHECK(holds);
      if (v.kind == LeqKind::Eventually && k >= v.threshold) CHECK(holds);
      if (v.kind == LeqKind::No && k < v.witness) CHECK(holds);
    }
    if (v.kind == LeqKind::Eventually && v.threshold > 0) CHECK_FALSE(m.eval(v.threshold - 1).leq(n.eval(v.threshold - 1)));
    if (v.kind == LeqKind::No) CHECK_FALSE(m.eval(v.witness).leq(n.eval(v.witness)));
  }
}

TEST_CASE("finiteness certificates") {
  Name z = Name::atom(std::vector<Clopen>(5, Clopen::var(1)), ZeroTail{});
  auto f = finiteness_certificate(z, 64);
  CHECK(f.kind == FinitenessKind::ForcedFinite);
  CHECK(f.bound == 5);

  auto s = finiteness_certificate(sliding_name("1"), 64);
  CHECK(s.kind == FinitenessKind::ForcedInfinite);
  CHECK(s.evidence == Dyadic(1) - Dyadic::pow2(-64));
  for (const auto& sample : s.samples) CHECK(sample.measure >= s.evidence);

  auto x = finiteness_certificate(indicator_name(EventuallyPeriodicSet::parse("mod3:1")), 64);
  CHECK(x.kind == FinitenessKind::ForcedInfinite);
  CHECK(x.evidence == Dyadic(1));

  // The two-bit pattern gives independent cylinders every second offset.
  auto t = finiteness_certificate(sliding_name("01"), 64);
  CHECK(t.kind == FinitenessKind::ForcedInfinite);
  Dyadic miss = Dyadic(1);
  for (int i = 0; i < 32; ++i) miss *= Dyadic(3, 2);
  CHECK(t.evidence == Dyadic(1) - miss);
}

TEST_CASE("settle_index") {
  CHECK(settle_index(10, [](std::uint64_t k) { return k >= 4; }) == 4);
  CHECK(settle_index(10, [](std::uint64_t) { return true; }) == 0);
}

TEST_CASE("tail shapes and regimes") {
  Name m = pointwise(BoolOp::Join, sliding_name("01"), indicator_name(EventuallyPeriodicSet::parse("mod3:0")));
  auto shape = tail_shape(m);
  CHECK(shape.analyzable);
  CHECK(shape.slide_length == 2);
  CHECK(shape.period == 3);
  auto reg = regimes(shape);
  CHECK(reg.period == 3);
  CHECK(reg.reps.size() == 3);
  for (std::uint64_t r = 0; r < 3; ++r) CHECK(reg.reps[r] % 3 == r);
  Name mixed = pointwise(BoolOp::Join, sliding_name("1"), fresh_name(Schedule::constant(Dyadic(1, 1))));
  CHECK(tail_shape(mixed).mixed());
}
