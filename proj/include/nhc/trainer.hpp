#pragma once

// NES training loop with curriculum, bad memories and restarts.

#include "nhc/checkpoint.hpp"
#include "nhc/experiment_config.hpp"
#include "nhc/fitness.hpp"
#include "nhc/tasks/task.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nhc {

/// Runs one sample and scores it; the episode stops at the first mistake.
SampleFitness evaluate_sample(const Parameters<double>& params, const ArchitectureConfig& arch,
                              const Task& task, const TaskSample& sample, double m_max);

std::vector<TaskSample> generate_samples(const Task& task, std::span<const SampleKey> keys,
                                         unsigned workers);

struct IterationMetrics {
  long iteration = 0;  // 1-based
  int level = 1;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  bool learning_triggered = false;
  int restarts = 0;
  long wall_ms = 0;
};

std::string metrics_csv_header();
std::string metrics_csv_row(const IterationMetrics& m);

struct TrainOptions {
  /// Continue from the checkpoint in the output directory.
  bool resume = false;
  std::function<void(const IterationMetrics&)> on_iteration;
};

struct TrainResult {
  bool solved = false;  // top curriculum level completed
  long iterations = 0;
  long learning_iterations = 0;
  int restarts = 0;
  int level = 1;
  std::string checkpoint_path;
  std::string metrics_path;
  std::string levels_path;
};

TrainingState fresh_training_state(const ExperimentConfig& cfg, const ArchitectureConfig& arch);

/// Writes metrics.csv, levels.csv and checkpoint.json under cfg.output_dir.
TrainResult run_train(const ExperimentConfig& cfg, const TrainOptions& options = {});

}  // namespace nhc
