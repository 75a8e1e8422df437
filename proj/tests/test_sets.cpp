#include <doctest.h>

#include "cantorlab/error.hpp"
#include "cantorlab/interval_partition.hpp"
#include "cantorlab/periodic_set.hpp"
#include "cantorlab/schedule.hpp"
#include "cantorlab/suites.hpp"

using namespace cantorlab;

TEST_CASE("eventually periodic membership") {
  auto x = EventuallyPeriodicSet::make(5, {1, 3}, 3, {2});
  std::vector<std::uint64_t> members;
  for (std::uint64_t k = 0; k < 15; ++k)
    if (x.contains(k)) members.push_back(k);
  CHECK(members == std::vector<std::uint64_t>{1, 3, 5, 8, 11, 14});
  CHECK(x.next_member(4) == 5);
  CHECK(x.next_member(12) == 14);
  CHECK_FALSE(EventuallyPeriodicSet::finite({2, 7}).next_member(8).has_value());
  CHECK(EventuallyPeriodicSet::tail_from(4).is_cofinite());
  CHECK(EventuallyPeriodicSet::finite({}).is_finite());
}

TEST_CASE("set operations agree with pointwise membership") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = random_set(rng);
    auto b = random_set(rng);
    auto meet = a.intersect(b), join = a.unite(b), comp = a.complement();
    bool sub = true;
    for (std::uint64_t k = 0; k < 200; ++k) {
      CHECK(meet.contains(k) == (a.contains(k) && b.contains(k)));
      CHECK(join.contains(k) == (a.contains(k) || b.contains(k)));
      CHECK(comp.contains(k) == !a.contains(k));
      sub &= !meet.contains(k) || a.contains(k);
    }
    CHECK(sub);
    CHECK(meet.subset_of(a));
    CHECK(a.subset_of(join));
    CHECK(comp.complement() == a);
  }
}

TEST_CASE("set text round-trip") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    auto a = random_set(rng);
    CHECK(EventuallyPeriodicSet::parse(a.to_string()) == a);
  }
  CHECK(EventuallyPeriodicSet::parse("evens") == EventuallyPeriodicSet::residue_class(2, 0));
  CHECK(EventuallyPeriodicSet::parse("mod2:0") == EventuallyPeriodicSet::parse("evens"));
  CHECK(EventuallyPeriodicSet::parse("from:3") == EventuallyPeriodicSet::tail_from(3));
  CHECK_THROWS_AS(EventuallyPeriodicSet::parse("primes"), Error);
}

TEST_CASE("representations are canonical") {
  // Period 4 with residues {0, 2} is the even numbers.
  CHECK(EventuallyPeriodicSet::make(0, {}, 4, {0, 2}) == EventuallyPeriodicSet::residue_class(2, 0));
  // A threshold that the periodic part already explains is dropped.
  CHECK(EventuallyPeriodicSet::make(4, {0, 2}, 2, {0}) == EventuallyPeriodicSet::residue_class(2, 0));
}

TEST_CASE("interval partition") {
  IntervalPartition p({0, 3, 7, 15});
  CHECK(p.interval_count() == 4);
  CHECK(p.index_of(0) == 0);
  CHECK(p.index_of(2) == 0);
  CHECK(p.index_of(3) == 1);
  CHECK(p.index_of(14) == 2);
  CHECK(p.index_of(15) == 3);
  CHECK(p.index_of(1000) == 3);
  CHECK(IntervalPartition::parse(p.to_string()) == p);
  CHECK_THROWS_AS(IntervalPartition({1, 3}), Error);
  CHECK_THROWS_AS(IntervalPartition({0, 3, 3}), Error);
}

TEST_CASE("schedules") {
  CHECK(Schedule::constant(Dyadic(1, 1)).at(9) == Dyadic(1, 1));
  // 2^-floor(log2(k+1)).
  auto p = Schedule::power_decay();
  CHECK(p.at(0) == Dyadic(1));
  CHECK(p.at(1) == Dyadic(1, 1));
  CHECK(p.at(6) == Dyadic(1, 2));
  CHECK(p.at(7) == Dyadic(1, 3));
  CHECK(Schedule::geometric(0).at(3) == Dyadic(1, 3));
  CHECK(Schedule::geometric(2).at(3) == Dyadic(1, 5));
  auto e = Schedule::explicit_list({Dyadic(3, 2), Dyadic(1, 1)}, Schedule::constant(Dyadic(1, 2)));
  CHECK(e.at(0) == Dyadic(3, 2));
  CHECK(e.at(1) == Dyadic(1, 1));
  CHECK(e.at(5) == Dyadic(1, 2));
  CHECK(e.has_tail_rule());
  CHECK_FALSE(Schedule::explicit_list({Dyadic(1, 1)}).has_tail_rule());
  for (const auto& s : {Schedule::power_decay(), Schedule::geometric(3), e, Schedule::constant(Dyadic(3, 2))})
    CHECK(Schedule::parse(s.to_string()) == s);
  CHECK_THROWS_AS(Schedule::constant(Dyadic(3, 1)), Error);
  CHECK_THROWS_AS(Schedule::parse("harmonic"), Error);
}
