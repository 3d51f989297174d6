#pragma once

// Frozen-genome evaluation at large levels and on transfer variants.

#include "nhc/config.hpp"
#include "nhc/genome.hpp"
#include "nhc/tasks/task.hpp"

#include <span>
#include <string>
#include <vector>

namespace nhc {

/// Raised when a genome's control interface does not fit a task.
struct InterfaceMismatch : ConfigError {
  using ConfigError::ConfigError;
};

struct LevelResult {
  int level = 1;
  int samples = 0;
  int solved = 0;   // f_s == 2.0
  long steps = 0;   // oracle steps over all samples
  double percent() const { return samples ? 100.0 * solved / samples : 0.0; }
};

struct EvalReport {
  std::string task;
  std::string variant;
  std::vector<LevelResult> levels;
  int errors() const;  // unsolved samples over all levels
};

/// 50, except 20 for sort at levels 500 and above.
int default_samples_per_level(const std::string& task, int level);

/// Throws InterfaceMismatch unless `arch` can drive `task`. The data word
/// width may differ; it is taken from the task.
ArchitectureConfig adapt_architecture(const ArchitectureConfig& arch, const Task& task);

/// `samples_per_level` <= 0 selects the default. Never modifies `theta`.
EvalReport evaluate_levels(const Genome& theta, const ArchitectureConfig& arch, const Task& task,
                           std::span<const int> levels, int samples_per_level,
                           std::uint64_t seed, unsigned workers);

/// Replays curriculum levels 1..11 on a transfer variant of the trained task.
EvalReport run_transfer(const Genome& theta, const ArchitectureConfig& arch,
                        const std::string& task, const std::string& variant,
                        int samples_per_level, std::uint64_t seed, unsigned workers);

std::string report_json(const EvalReport& report);
std::string report_csv(const EvalReport& report);

}  // namespace nhc
