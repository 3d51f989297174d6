#include "nhc/selftest.hpp"

#include <cstdio>

namespace nhc {

bool run_selftest(const SelftestOptions& options, std::ostream& out) {
  using namespace suites;
  const bool quick = options.quick;
  std::vector<SuiteResult> results;
  results.push_back(memory_oracle(quick ? 100 : 1000, 200, 7));
  results.push_back(fitness_scorer(quick ? 1000 : 10000, 11));
  results.push_back(addition_oracle(quick ? 6 : 8, options.mutate == "addition"));
  results.push_back(sort_oracle(quick ? 1000 : 10000, 13));
  results.push_back(arithmetic_oracle(quick ? 1000 : 10000, 17));
  results.push_back(search_plan_oracle(quick ? 100 : 1000, 19));
  results.push_back(nes_sphere(5, 2000, 0.05));

  bool all = true;
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof line, "%-4s %-28s %8.2fs  %s", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.seconds, r.detail.c_str());
    out << line << '\n';
    all = all && r.passed;
  }
  out << (all ? "all suites passed" : "some suites failed") << '\n';
  return all;
}

}  // namespace nhc
