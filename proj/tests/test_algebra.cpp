#include <algorithm>

#include <doctest.h>

#include "cantorlab/clopen.hpp"
#include "cantorlab/dyadic.hpp"
#include "cantorlab/error.hpp"
#include "cantorlab/suites.hpp"

using namespace cantorlab;

namespace {

// Satisfying assignments counted by brute force over the support.
Dyadic brute_measure(const Clopen& c) {
  auto s = c.support();
  long long hits = 0;
  for (std::size_t a = 0; a < (std::size_t{1} << s.size()); ++a)
    hits += c.contains([&](Coord v) {
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j] == v) return ((a >> j) & 1) != 0;
      return false;
    });
  return Dyadic(BigInt(hits), static_cast<std::uint32_t>(s.size()));
}

}  // namespace

TEST_CASE("dyadic canonical form") {
  CHECK(Dyadic(4, 3) == Dyadic(1, 1));
  CHECK(Dyadic(4, 3).exponent() == 1);
  CHECK(Dyadic(0, 7).exponent() == 0);
  CHECK(Dyadic(6, 0).numerator() == 6);
  CHECK(Dyadic::pow2(-3) == Dyadic(1, 3));
  CHECK(Dyadic::pow2(2) == Dyadic(4));
}

TEST_CASE("dyadic arithmetic") {
  Dyadic a(3, 2), b(5, 3);
  CHECK(a + b == Dyadic(11, 3));
  CHECK(a - b == Dyadic(1, 3));
  CHECK(a * b == Dyadic(15, 5));
  CHECK(-a == Dyadic(-3, 2));
  CHECK(a.half() == Dyadic(3, 3));
  CHECK(b < a);
  CHECK(compare(Dyadic(1, 1), Rational(1, 3)) > 0);
  CHECK(compare(Dyadic(1, 2), Rational(1, 4)) == 0);
  CHECK(Dyadic(5, 3).to_rational() == Rational(5, 8));
}

TEST_CASE("dyadic text") {
  CHECK(Dyadic::parse("5/8") == Dyadic(5, 3));
  CHECK(Dyadic::parse("-3") == Dyadic(-3));
  CHECK(Dyadic(5, 3).to_string() == "5/8");
  CHECK(Dyadic().to_string() == "0");
  CHECK_THROWS_AS(Dyadic::parse("1/3"), Error);
  CHECK(Dyadic::from_rational(Rational(3, 16)) == Dyadic(3, 4));
  CHECK_THROWS_AS(Dyadic::from_rational(Rational(1, 3)), Error);
  CHECK(parse_rational("2/6") == Rational(1, 3));
  CHECK(rational_to_string(Rational(2, 6)) == "1/3");
}

TEST_CASE("clopen spec examples") {
  CHECK((Clopen::cylinder(5, "1") & Clopen::cylinder(5, "0")).is_zero());
  CHECK((~Clopen::one()).is_zero());
  Clopen j = Clopen::cylinder(0, "1") | Clopen::cylinder(1, "1");
  CHECK(j.support() == std::vector<Coord>{0, 1});
  CHECK(j.measure() == Dyadic(3, 2));
  CHECK(brute_measure(j) == Dyadic(3, 2));

  Clopen c = Clopen::cylinder(3, "01");
  CHECK(c.support() == std::vector<Coord>{3, 4});
  CHECK(c.measure() == Dyadic(1, 2));
  CHECK(Clopen::cylinder(0, "").is_one());
  CHECK(Clopen::cylinder(2, "110").measure() == Dyadic(1, 3));
  CHECK(Clopen::one().measure() == Dyadic(1));

  CHECK(Clopen::zero().leq(Clopen::cylinder(4, "10")));
  CHECK(Clopen::cylinder(0, "10").leq(Clopen::cylinder(0, "1")));
  CHECK_FALSE(Clopen::cylinder(0, "1").leq(Clopen::cylinder(1, "1")));
  // The witness x(0)=1, x(1)=0.
  Clopen diff = Clopen::cylinder(0, "1") - Clopen::cylinder(1, "1");
  CHECK(diff.contains([](Coord v) { return v == 0; }));

  CHECK(enumerate_clopens({}).size() == 2);
  CHECK(enumerate_clopens({5}).size() == 4);
  CHECK(enumerate_clopens({0, 1}).size() == 16);
  CHECK(ClopenEnumerator({0, 1, 2}).size() == 256);
}

TEST_CASE("cylinder measure for every pattern") {
  for (Coord k : {0u, 3u, 17u})
    for (std::size_t len = 0; len <= 6; ++len)
      for (std::uint32_t v = 0; v < (1u << len); ++v) {
        std::string s;
        for (std::size_t i = 0; i < len; ++i) s += ((v >> i) & 1) ? '1' : '0';
        CHECK(Clopen::cylinder(k, s).measure() == Dyadic::pow2(-static_cast<std::int64_t>(len)));
      }
}

TEST_CASE("canonical equality of equivalent formulas") {
  Clopen x = Clopen::var(0), y = Clopen::var(1), z = Clopen::var(2);
  CHECK(((x | y) & z) == ((x & z) | (y & z)));
  CHECK(~(x & ~y) == (~x | y));
  CHECK((x | ~x).is_one());
  CHECK(((x & y) | (x & ~y)) == x);
  CHECK(Clopen::parse("x0 & !x0").is_zero());
  CHECK(Clopen::parse("cyl(4,\"01\")") == (~Clopen::var(4) & Clopen::var(5)));
}

TEST_CASE("clopen text round-trip") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Clopen c = random_clopen(rng, 9, 5);
    CHECK(Clopen::parse(c.to_string()) == c);
  }
  CHECK_THROWS_AS(Clopen::parse("x0 &"), Error);
  CHECK_THROWS_AS(Clopen::parse("cyl(1,\"2\")"), Error);
}

TEST_CASE("measure agrees with brute force on random clopens") {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Clopen a = random_clopen(rng, 9, 6);
    Clopen b = random_clopen(rng, 9, 6);
    CHECK(a.measure() == brute_measure(a));
    CHECK((a | b).measure() + (a & b).measure() == a.measure() + b.measure());
    CHECK((~a).measure() == Dyadic(1) - a.measure());
    CHECK(a.leq(b) == (a - b).is_zero());
    CHECK(a.disjoint(b) == (a & b).is_zero());
  }
}

TEST_CASE("restrict and below") {
  Clopen c = Clopen::parse("x0 & x1 | x2");
  CHECK(c.restrict(2, true).is_one());
  CHECK(c.restrict(2, false) == Clopen::parse("x0 & x1"));
  // Binary value of bits 10..12 (most significant first) below 5.
  Clopen b = Clopen::below(10, 3, 5);
  CHECK(b.measure() == Dyadic(5, 3));
  CHECK(Clopen::below(10, 3, 0).is_zero());
  CHECK(Clopen::below(10, 3, 8).is_one());
}

TEST_CASE("frontier and collapse") {
  Clopen c = Clopen::parse("x0 & x3 | !x0 & x1");
  auto f = c.frontier(1);
  std::sort(f.begin(), f.end());
  std::vector<Clopen> want{Clopen::zero(), Clopen::one(), Clopen::var(3)};
  std::sort(want.begin(), want.end());
  CHECK(f == want);
  Clopen kept = c.collapse(1, [](const Clopen& g) { return !g.is_zero(); });
  CHECK(kept == (Clopen::var(0) | Clopen::var(1)));
  Clopen half = Clopen::parse("x0 & x3").collapse(1, [](const Clopen& g) { return !g.is_zero(); });
  CHECK(half == Clopen::var(0));
}

TEST_CASE("apply_bool") {
  Clopen a = Clopen::var(0), b = Clopen::var(1);
  CHECK(apply_bool(BoolOp::Meet, a, b) == (a & b));
  CHECK(apply_bool(BoolOp::Join, a, b) == (a | b));
  CHECK(apply_bool(BoolOp::Diff, a, b) == (a - b));
  CHECK(apply_bool(BoolOp::Complement, a) == ~a);
  CHECK_THROWS_AS(apply_bool(BoolOp::Meet, a), Error);
}
