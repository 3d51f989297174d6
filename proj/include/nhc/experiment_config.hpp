#pragma once

// Experiment configuration: a flat key=value file plus command-line overrides.

#include "nhc/config.hpp"
#include "nhc/curriculum.hpp"
#include "nhc/nes.hpp"

#include <map>
#include <optional>
#include <string>

namespace nhc {

class Task;

struct ExperimentConfig {
  std::string task = "copy";
  std::string variant = "default";
  Ablation ablation = Ablation::None;
  NesConfig nes;
  CurriculumConfig curriculum;

  // Architecture overrides; unset keeps the task default.
  std::optional<int> controller_size;
  std::optional<int> control_word;
  std::optional<Location> memory_size;

  std::string output_dir = "runs/nhc";
  int workers = 0;          // 0 resolves from NHC_WORKERS or the hardware
  bool wall_clock = false;  // fill the wall_ms metrics column
  bool verbose = false;

  /// Parses and applies one key. Throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// All keys with their current values, in a fixed order.
  std::map<std::string, std::string> entries() const;
  void validate() const;
};

/// Reads `key = value` lines; '#' starts a comment.
ExperimentConfig load_experiment_config(const std::string& path);

/// Task defaults with the ablation and overrides applied.
ArchitectureConfig resolve_architecture(const ExperimentConfig& cfg, const Task& task);

}  // namespace nhc
