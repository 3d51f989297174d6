#pragma once

// Oracle and property suites shared by `nhc selftest` and the acceptance binary.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace nhc::suites {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Random write/read/free sequences checked against reference::LinkedMemory
/// after every operation (links, usage, read targets and readouts).
SuiteResult memory_oracle(int sequences, int operations, std::uint64_t seed);

/// sample_fitness and margin_penalty against the brute-force step scorer.
SuiteResult fitness_scorer(int traces, std::uint64_t seed, double tolerance = 1e-12);

/// Every pair of numbers up to `max_bits` bits; the replayed oracle has to
/// produce the integer sum. `mutate` corrupts the oracle before replay.
SuiteResult addition_oracle(int max_bits, bool mutate = false);

SuiteResult sort_oracle(int samples, std::uint64_t seed);
SuiteResult arithmetic_oracle(int samples, std::uint64_t seed);

/// FIFO expansion, executable transitions and goal-reaching plans, spread over
/// search, search+, plan and plan+.
SuiteResult search_plan_oracle(int worlds, std::uint64_t seed);

/// 10-dimensional sphere from |theta0| = 1 with P=20, sigma=0.1, alpha=0.01.
/// Passes if |theta| < threshold within `iterations` for every seed.
SuiteResult nes_sphere(int seeds, int iterations, double threshold);

}  // namespace nhc::suites

namespace nhc {

struct SelftestOptions {
  std::string mutate;  // "addition" corrupts the addition oracle
  bool quick = false;
};

/// Prints one line per suite; returns true if all passed.
bool run_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace nhc
