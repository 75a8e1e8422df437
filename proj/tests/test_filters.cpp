#include <doctest.h>

#include "cantorlab/error.hpp"
#include "cantorlab/filters.hpp"
#include "cantorlab/suites.hpp"
#include "support.hpp"

using namespace cantorlab;

TEST_CASE("profinite threads") {
  auto z = ProfiniteThread::zero();
  CHECK(z.residue(7) == 0);
  auto i = ProfiniteThread::integer(-1);
  CHECK(i.residue(5) == 4);
  // 1*1! + 2*2! + 3*3! = 23.
  auto d = ProfiniteThread::factorial_digits({1, 2, 3});
  CHECK(d.residue(100) == 23);
  CHECK(d.factorial_residue(3) == 23 % 6);
  CHECK(ProfiniteThread::parse(d.to_string()).residue(1000) == 23);
  CHECK(ProfiniteThread::parse("int:-7").residue(10) == 3);
  CHECK_THROWS_AS(ProfiniteThread::factorial_digits({2}), Error);
  CHECK_THROWS_AS(ProfiniteThread::parse("pi"), Error);
}

TEST_CASE("oracle membership") {
  auto z = ProfiniteThread::zero();
  CHECK(oracle_member(z, EventuallyPeriodicSet::residue_class(3, 0)));
  CHECK_FALSE(oracle_member(z, EventuallyPeriodicSet::parse("odds")));
  auto d = ProfiniteThread::factorial_digits({1});
  for (const auto& t : {z, d}) {
    CHECK(oracle_member(t, EventuallyPeriodicSet::tail_from(10)));
    CHECK_FALSE(oracle_member(t, EventuallyPeriodicSet::finite({0, 1, 2})));
  }
  CHECK(oracle_member(d, EventuallyPeriodicSet::parse("odds")));
}

TEST_CASE("ultrafilter laws") {
  Rng rng(31);
  for (const auto& t : {ProfiniteThread::zero(), ProfiniteThread::factorial_digits({1, 0, 2, 4})}) {
    for (int i = 0; i < 300; ++i) {
      auto a = random_set(rng), b = random_set(rng);
      CHECK(oracle_member(t, a) != oracle_member(t, a.complement()));
      CHECK(oracle_member(t, a.intersect(b)) == (oracle_member(t, a) && oracle_member(t, b)));
      if (oracle_member(t, a) && a.subset_of(b)) CHECK(oracle_member(t, b));
    }
  }
}

TEST_CASE("limits along the thread") {
  auto z = ProfiniteThread::zero();
  CHECK(limit_along(z, {{Dyadic(3, 2), EventuallyPeriodicSet::all()}}) == Dyadic(3, 2));
  CHECK(limit_along(z, {{Dyadic(1, 1), EventuallyPeriodicSet::parse("evens")},
                        {Dyadic(0), EventuallyPeriodicSet::parse("odds")}}) == Dyadic(1, 1));
  CHECK(error_kind([&] { limit_along(z, {{Dyadic(1), EventuallyPeriodicSet::parse("evens")}}); }) ==
        ErrorKind::MalformedSequence);
  CHECK(error_kind([&] {
          limit_along(z, {{Dyadic(1), EventuallyPeriodicSet::parse("evens")}, {Dyadic(0), EventuallyPeriodicSet::all()}});
        }) == ErrorKind::MalformedSequence);
}

TEST_CASE("measure steps and nu") {
  auto z = ProfiniteThread::zero();
  auto nv = nu(make_Ms("01"), z);
  REQUIRE(nv.is_exact());
  CHECK(nv.exact().value == Dyadic(1, 2));
  auto ne = nu(indicator_name(EventuallyPeriodicSet::parse("evens")), z);
  REQUIRE(ne.is_exact());
  CHECK(ne.exact().value == Dyadic(1));
  auto n0 = nu(zero_name(), z);
  REQUIRE(n0.is_exact());
  CHECK(n0.exact().value == Dyadic(0));
  auto no = nu(indicator_name(EventuallyPeriodicSet::parse("evens")), ProfiniteThread::integer(1));
  REQUIRE(no.is_exact());
  CHECK(no.exact().value == Dyadic(0));

  // A member X and a clopen of measure 3/4.
  Name m = and_const(indicator_name(EventuallyPeriodicSet::residue_class(3, 0)), Clopen::parse("x0 | x1"));
  auto steps = measure_steps(m);
  CHECK(limit_along(z, steps) == Dyadic(3, 2));
}

TEST_CASE("fresh independent blocks") {
  Name m = fresh_independent(Schedule::constant(Dyadic(1, 1)));
  CHECK(m.eval(4).measure() == Dyadic(1, 1));
  CHECK(fresh_independent(Schedule::power_decay()).eval(6).measure() == Dyadic(1, 2));
  auto all = EventuallyPeriodicSet::all();
  CHECK(prefix_join_measure(m, all, 0, 3) == Dyadic(7, 3));
  CHECK(prefix_join_measure(m, all, 5, 5) == Dyadic(0));
  CHECK(prefix_join_measure(m, EventuallyPeriodicSet::parse("evens"), 0, 40) == Dyadic(1) - Dyadic::pow2(-20));
  CHECK(error_kind([&] { prefix_join_measure(make_Ms("1"), all, 0, 3); }) == ErrorKind::TypeMismatch);
  // Direct join of the blocks.
  Clopen j;
  for (std::uint64_t k = 1; k <= 6; ++k) j |= m.eval(k);
  CHECK(j.measure() == prefix_join_measure(m, all, 0, 6));
}

TEST_CASE("Borel-Cantelli verdicts") {
  auto evens = EventuallyPeriodicSet::parse("evens");
  auto c = borel_cantelli_verdict(Schedule::constant(Dyadic(1, 1)), evens);
  CHECK(c.kind() == BorelCantelliVerdict::Kind::Divergent);
  CHECK(c.certificate(Dyadic::pow2(-20)) == 40);
  CHECK(c.certificate(Dyadic::pow2(-20), 10) == 50);

  auto g = borel_cantelli_verdict(Schedule::geometric(0), EventuallyPeriodicSet::all());
  CHECK(g.kind() == BorelCantelliVerdict::Kind::Convergent);
  for (std::uint64_t n = 0; n <= 20; ++n) CHECK(g.tail_bound(n) <= Dyadic::pow2(-static_cast<std::int64_t>(n)));
  CHECK(g.tail_bound(1) == Dyadic(1, 1));

  CHECK(borel_cantelli_verdict(Schedule::power_decay(), EventuallyPeriodicSet::all()).kind() ==
        BorelCantelliVerdict::Kind::Divergent);
  CHECK(borel_cantelli_verdict(Schedule::constant(Dyadic(1, 1)), EventuallyPeriodicSet::finite({1, 2})).kind() ==
        BorelCantelliVerdict::Kind::Convergent);
  CHECK(borel_cantelli_verdict(Schedule::constant(Dyadic(0)), evens).kind() == BorelCantelliVerdict::Kind::Convergent);
  CHECK(error_kind([] { borel_cantelli_verdict(Schedule::explicit_list({Dyadic(1, 1)}), EventuallyPeriodicSet::all()); }) ==
        ErrorKind::Unclassifiable);
  auto tailed = borel_cantelli_verdict(
      Schedule::explicit_list({Dyadic(1), Dyadic(1)}, Schedule::geometric(0)), EventuallyPeriodicSet::all());
  CHECK(tailed.kind() == BorelCantelliVerdict::Kind::Convergent);
}

TEST_CASE("AP1 on the all-ones chain") {
  std::vector<Name> chain;
  for (std::size_t n = 0; n <= 5; ++n) chain.push_back(make_Ms(std::string(n, '1')));
  auto res = ap1_diagonalize(chain, ProfiniteThread::zero(), 32);
  CHECK(res.name.op() == Name::Op::Atom);
  CHECK(std::holds_alternative<Spliced>(res.name.tail()));
  const auto& rep = res.report;
  CHECK(rep.cuts == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
  for (std::size_t n = 0; n < chain.size(); ++n) {
    CHECK(rep.limits[n] == Dyadic::pow2(-static_cast<std::int64_t>(n)));
    auto v = leq_name(res.name, chain[n], 32);
    CHECK((v.kind == LeqKind::Always || v.kind == LeqKind::Eventually));
  }
  for (std::uint64_t k = 0; k < 32; ++k)
    CHECK(rep.window_values[k] == Dyadic::pow2(-std::min<std::int64_t>(static_cast<std::int64_t>(k), 5)));
}

TEST_CASE("AP1 preconditions") {
  auto z = ProfiniteThread::zero();
  CHECK(error_kind([&] { ap1_diagonalize({make_Ms("1"), make_Ms("")}, z); }) == ErrorKind::Precondition);
  CHECK(error_kind([&] { ap1_diagonalize({}, z); }) != std::nullopt);
}
