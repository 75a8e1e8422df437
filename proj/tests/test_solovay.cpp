#include <doctest.h>

#include "cantorlab/error.hpp"
#include "cantorlab/solovay.hpp"
#include "cantorlab/suites.hpp"
#include "support.hpp"

using namespace cantorlab;

TEST_CASE("pattern names") {
  for (std::uint64_t k = 0; k < 20; ++k) CHECK(make_Ms("").eval(k).is_one());
  CHECK(make_Ms("01").eval(3) == Clopen::cylinder(3, "01"));
  CHECK(make_Ms("01").eval(3).measure() == Dyadic(1, 2));
  Name meet = pointwise(BoolOp::Meet, make_Ms("0"), make_Ms("1"));
  CHECK(finiteness_certificate(meet, 64).kind == FinitenessKind::ForcedFinite);
  CHECK(finiteness_certificate(meet, 64).bound == 0);
}

TEST_CASE("dyadic antichains") {
  CHECK(dyadic_antichain(1, 6) == std::vector<std::string>{""});
  CHECK(dyadic_antichain(Rational(1, 2), 6) == std::vector<std::string>{"0"});
  CHECK(dyadic_antichain(Rational(5, 8), 8) == std::vector<std::string>{"0", "100"});
  CHECK(dyadic_antichain(0, 8).empty());
  // 2/3 = 0.101010...
  CHECK(dyadic_antichain(Rational(2, 3), 4) == std::vector<std::string>{"0", "100"});
  CHECK_THROWS_AS(dyadic_antichain(Rational(3, 2), 4), Error);
}

TEST_CASE("alpha names") {
  Name z = make_Malpha(0, 8);
  for (std::uint64_t k = 0; k < 10; ++k) CHECK(z.eval(k).is_zero());
  Name m = make_Malpha(Rational(5, 8), 8);
  for (std::uint64_t k = 0; k < 10; ++k) CHECK(m.eval(k).measure() == Dyadic(5, 3));
  Name t = make_Malpha(Rational(2, 3), 10);
  Rational err = t.eval(4).measure().to_rational() - Rational(2, 3);
  CHECK(err <= 0);
  CHECK(-err <= Rational(1, 1024));
}

TEST_CASE("tail limits") {
  auto v = tail_limit(make_Ms("01"), Clopen::cylinder(2, "1"));
  REQUIRE(v.is_exact());
  CHECK(v.exact().value == Dyadic(1, 3));
  CHECK(v.exact().stabilization_index == 3);
  // The sequence actually differs just before the stabilization index.
  CHECK((make_Ms("01").eval(2) & Clopen::cylinder(2, "1")).measure() != Dyadic(1, 3));

  Clopen q = Clopen::parse("x0 & !x3");
  Clopen b = Clopen::parse("x0 | x5");
  auto c = tail_limit(constant_name(q), b);
  REQUIRE(c.is_exact());
  CHECK(c.exact().value == (q & b).measure());
  CHECK(c.exact().stabilization_index == 0);

  auto ev = tail_limit(indicator_name(EventuallyPeriodicSet::parse("evens")), Clopen::var(1));
  REQUIRE(ev.kind() == MeasureValue::Kind::Conditional);
  const auto& cond = ev.conditional();
  REQUIRE(cond.queries.size() == 1);
  CHECK(cond.queries[0] == EventuallyPeriodicSet::parse("evens"));
  for (const auto& br : cond.branches) CHECK(br.value.value == (br.answers[0] ? Dyadic(1, 1) : Dyadic(0)));
  CHECK(cond.branches.size() == 2);
}

TEST_CASE("tail limits match late samples") {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    Name m = random_name(rng, 3, false);
    Clopen b = random_clopen(rng, 7, 4);
    auto v = tail_limit(m, b);
    if (!v.is_exact()) continue;
    for (std::uint64_t k = v.exact().stabilization_index; k < v.exact().stabilization_index + 40; ++k)
      CHECK((m.eval(k) & b).measure() == v.exact().value);
  }
}

TEST_CASE("open schedules give intervals") {
  auto v = tail_limit(fresh_name(Schedule::power_decay()), Clopen::one(), 16);
  REQUIRE(v.kind() == MeasureValue::Kind::Interval);
  CHECK(v.interval().lo <= v.interval().hi);
  CHECK(v.interval().window == 16);
}

TEST_CASE("densities") {
  auto d = unconditional_density(make_Ms("110"));
  REQUIRE(d.constant_value().has_value());
  CHECK(*d.constant_value() == Dyadic(1, 3));

  Clopen q = Clopen::parse("x0 & !x2");
  auto dq = unconditional_density(constant_name(q));
  for (const auto& b : enumerate_clopens({0, 1, 2})) CHECK(dq.integral(b) == (q & b).measure());
  CHECK(dq.max_value() == Dyadic(1));

  auto a = unconditional_density(make_Malpha(Rational(5, 8), 8));
  REQUIRE(a.constant_value().has_value());
  CHECK(*a.constant_value() == Dyadic(5, 3));

  CHECK(error_kind([] { unconditional_density(indicator_name(EventuallyPeriodicSet::parse("evens"))); }) ==
        ErrorKind::UnsupportedName);
  auto cd = density(indicator_name(EventuallyPeriodicSet::parse("evens")));
  CHECK(std::holds_alternative<ConditionalDensity>(cd));
}

TEST_CASE("density integrals equal tail limits") {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    Name m = random_name(rng, 3, false);
    Density d = unconditional_density(m);
    Dyadic total;
    for (std::size_t c = 0; c < d.cells.size(); ++c) total += d.cells[c].measure();
    CHECK(total == Dyadic(1));
    for (int j = 0; j < 5; ++j) {
      Clopen b = random_clopen(rng, 5, 4);
      auto v = tail_limit(m, b);
      REQUIRE(v.is_exact());
      CHECK(v.exact().value == d.integral(b));
    }
  }
}

TEST_CASE("density comparison") {
  auto d = unconditional_density(make_Ms("11"));
  CHECK(density_leq(d, d));
  CHECK(density_leq(d, unconditional_density(make_Ms("1"))));
  CHECK_FALSE(density_leq(Density::constant(Dyadic(5, 3)), Density::constant(Dyadic(1, 1))));
  Clopen q = Clopen::var(0);
  CHECK(density_leq(unconditional_density(constant_name(q & Clopen::var(1))), unconditional_density(constant_name(q))));
  CHECK_FALSE(density_leq(unconditional_density(constant_name(q)), Density::constant(Dyadic(1, 1))));
}

TEST_CASE("partition families") {
  auto f0 = partition_family(0);
  REQUIRE(f0.size() == 1);
  CHECK(f0[0].eval(5).is_one());
  auto f1 = partition_family(1);
  REQUIRE(f1.size() == 2);
  for (std::uint64_t k = 0; k < 20; ++k) CHECK((f1[0].eval(k) | f1[1].eval(k)).is_one());
  auto f3 = partition_family(3);
  CHECK(f3.size() == 8);
  for (const auto& m : f3) CHECK(*unconditional_density(m).constant_value() == Dyadic(1, 3));
  CHECK_THROWS_AS(partition_family(9), Error);
}
