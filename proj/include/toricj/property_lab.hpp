#pragma once

// Seeded property suites over the matrix operators, the ε-thresholds, the
// regularized maximum and the Legendre transform. Sample k of a suite draws
// from its own mt19937_64 stream seeded by (seed, suite, k), so any reported
// counterexample can be replayed alone.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricj::lab {

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckTally {
  std::string name;
  long evaluated = 0;
  long failed = 0;
  /// Largest error/tolerance ratio for tolerance checks, largest signed
  /// violation (negative is slack) for inequality checks.
  double worst = -1e300;
};

struct Counterexample {
  std::string check;
  long sample = 0;
  std::string inputs;
};

/// An observation that is counted but never asserted.
struct Probe {
  std::string name;
  long hits = 0;
  long evaluated = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  long samples = 0;
  std::vector<CheckTally> checks;
  /// The first few failures, with every input needed to reproduce them.
  std::vector<Counterexample> counterexamples;
  /// Informational lines (printed threshold values, probes that are not asserted).
  std::vector<std::string> notes;
  std::vector<Probe> probes;

  long failures() const;
  bool passed() const { return failures() == 0; }
};

/// Threshold queries printed by the thresholds suite.
struct ThresholdQuery {
  double K = 1.0;
  int n = 2;
  double C_theta = 1.0;
};

const std::vector<std::string>& suite_names();

std::mt19937_64 sample_stream(std::uint64_t seed, const std::string& suite, long index);

SuiteReport run_convexity(std::uint64_t seed, long samples);
SuiteReport run_thresholds(std::uint64_t seed, long samples, const std::vector<ThresholdQuery>& queries = {});
SuiteReport run_regmax(std::uint64_t seed, long samples);
SuiteReport run_legendre(std::uint64_t seed, long samples);

/// Dispatches by name; throws UnknownSuite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, long samples);

}  // namespace toricj::lab
