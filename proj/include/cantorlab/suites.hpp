#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cantorlab/filters.hpp"
#include "cantorlab/json_io.hpp"

namespace cantorlab {

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::uint64_t window = 64;
  /// Largest n for the partition suite.
  std::uint32_t depth = 5;
  ProfiniteThread thread;
  bool timing = false;
};

/// Why the expected value is trusted.
enum class Basis { StatedValue, IndependentOracle, Identity, Property };
std::string_view to_string(Basis b);

struct CaseRecord {
  std::string key;
  std::string input;
  Json expected;
  Json actual;
  Basis basis = Basis::Property;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CaseRecord> cases;
  std::vector<std::string> notes;
  double seconds = 0;

  bool passed() const;
  std::size_t failures() const;
  /// Cases sorted by key; wall time only when config.timing is set.
  Json to_json() const;
  std::string to_tsv() const;
};

const std::vector<std::string>& suite_ids();

/// Throws Usage for an unknown suite id.
SuiteReport run_suite(std::string_view id, const SuiteConfig& config);

/// Seeded generator with plain modulo sampling, so sequences are identical
/// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }
  bool coin() { return (gen_() & 1) != 0; }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Random generators shared by the suites and the tests.
Clopen random_clopen(Rng& rng, Coord max_coord, std::size_t max_support);
EventuallyPeriodicSet random_set(Rng& rng);
/// Names over sliding, constant, fresh (eventually constant) and, when
/// allowed, indicator atoms; every result is in the analyzable fragment.
Name random_name(Rng& rng, int depth, bool allow_indicator);

}  // namespace cantorlab
