#pragma once

#include "nhc/config.hpp"
#include "nhc/data_module.hpp"
#include "nhc/nhc.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhc {

/// Version tag of the per-step oracle conventions (see docs/trace_conventions.md).
inline constexpr const char* kTraceConvention = "nhc-trace-v1";

/// Highest curriculum level; it samples uniformly from the levels below it.
inline constexpr int kMixedLevel = 11;

struct GeneratorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One problem instance. Fully determined by (task, variant, seed, level).
struct TaskSample {
  std::string task;
  std::string variant;
  std::uint64_t seed = 0;
  int level = 1;       // requested curriculum level
  int complexity = 1;  // effective level after mixed-level delegation
  std::vector<Eigen::VectorXd> inputs;  // presented data words / tokens
  Eigen::VectorXd start;                // search/plan initial state
  Eigen::VectorXd goal;                 // search/plan goal state
  int repeats = 1;                      // repeatCopy copies, duplicated duplicates
  OracleTrace oracle;

  std::size_t t_max() const { return oracle.size(); }
};

/// Result of driving a task's data module with its own oracle trace.
struct Replay {
  std::vector<InputSignals> inputs;
  std::vector<AluOutput> outputs;
  std::size_t halted_after = 0;  // steps executed when the module halted, 0 if never
};

class Task {
 public:
  virtual ~Task() = default;

  virtual std::string name() const = 0;
  virtual std::string variant() const = 0;
  /// Task-specific architecture defaults (head counts, feedback, widths).
  virtual ArchitectureConfig architecture() const = 0;
  virtual std::vector<std::string> operation_names() const = 0;

  /// Deterministic in (level, seed); level 11 delegates to a level in 1..10.
  TaskSample generate(int level, std::uint64_t seed) const;

  /// Reference per-step execution of the algorithm for `sample`.
  virtual OracleTrace oracle_trace(const TaskSample& sample) const = 0;

  virtual std::unique_ptr<DataModule> make_module(const TaskSample& sample) const = 0;

  /// Checks that a replay of the oracle produced the algorithm's end result.
  virtual bool verify_replay(const TaskSample& sample, const Replay& replay) const = 0;

 protected:
  virtual void fill_instance(TaskSample& sample, std::mt19937_64& rng) const = 0;
};

/// Runs the oracle's (data, operation) pairs through the task's data module.
Replay replay_oracle(const Task& task, const TaskSample& sample);

/// Runs `replay_oracle` and `verify_replay`, and also requires the module to
/// halt exactly at the final oracle step.
bool closes_the_loop(const Task& task, const TaskSample& sample);

std::unique_ptr<Task> make_task(const std::string& name, const std::string& variant = "default");
std::vector<std::string> task_names();
std::vector<std::string> task_variants(const std::string& name);

// Small shared helpers.
Eigen::VectorXd concat(std::initializer_list<Eigen::VectorXd> parts);
Eigen::VectorXd scalar_word(double v);

}  // namespace nhc
