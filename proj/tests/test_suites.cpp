#include <doctest.h>

#include "cantorlab/error.hpp"
#include "cantorlab/suites.hpp"
#include "support.hpp"

using namespace cantorlab;

TEST_CASE("suite ids") {
  CHECK(suite_ids().size() == 12);
  CHECK(error_kind([] { run_suite("nope", {}); }) == ErrorKind::Usage);
}

TEST_CASE("partition suite at depth 3") {
  SuiteConfig cfg;
  cfg.seed = 0;
  cfg.depth = 3;
  auto r = run_suite("partition", cfg);
  CHECK(r.passed());
  Json j = r.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["pass"] == true);
  CHECK_FALSE(j.contains("wall_time_ms"));
  bool eight = false;
  for (const auto& c : j["cases"])
    if (c["key"] == "n=03/size") eight = c["actual"] == 8;
  CHECK(eight);
}

TEST_CASE("reports are sorted and deterministic") {
  SuiteConfig cfg;
  cfg.seed = 42;
  auto a = run_suite("algebra-laws", cfg).to_json();
  auto b = run_suite("algebra-laws", cfg).to_json();
  CHECK(a.dump() == b.dump());
  std::string prev;
  for (const auto& c : a["cases"]) {
    std::string key = c["key"];
    CHECK(prev <= key);
    prev = key;
  }
  CHECK(a["pass"] == true);
  cfg.timing = true;
  CHECK(run_suite("gm-reals", cfg).to_json().contains("wall_time_ms"));
}

TEST_CASE("seeds change the random cases") {
  SuiteConfig a, b;
  a.seed = 1;
  b.seed = 2;
  CHECK(run_suite("restr-incl", a).to_json()["cases"] != run_suite("restr-incl", b).to_json()["cases"]);
}

TEST_CASE("tsv output") {
  auto r = run_suite("gm-reals", {});
  std::string t = r.to_tsv();
  CHECK(t.rfind("# suite=gm-reals", 0) == 0);
  CHECK(t.find("key\tpass\tbasis") != std::string::npos);
}

TEST_CASE("random generators are reproducible") {
  Rng a(9), b(9);
  for (int i = 0; i < 20; ++i) {
    CHECK(random_clopen(a, 6, 4) == random_clopen(b, 6, 4));
    CHECK(random_set(a) == random_set(b));
    CHECK(random_name(a, 3, true).structurally_equal(random_name(b, 3, true)));
  }
}
