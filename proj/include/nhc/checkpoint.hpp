#pragma once

// Training state and its JSON checkpoint file.

#include "nhc/config.hpp"
#include "nhc/curriculum.hpp"
#include "nhc/experiment_config.hpp"
#include "nhc/genome.hpp"
#include "nhc/nes.hpp"

#include <random>
#include <string>

namespace nhc {

inline constexpr int kCheckpointVersion = 1;

struct TrainingState {
  ArchitectureConfig arch;
  Genome theta;
  std::mt19937_64 rng;
  CurriculumState curriculum;
  BadMemories bad{200};
  RestartMonitor monitor{2000};
  long iteration = 0;
  int restarts = 0;
  long learning_iterations = 0;
};

struct Checkpoint {
  ExperimentConfig config;
  TrainingState state;
  std::string trace_convention;
};

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
/// Throws ConfigError on a missing file, a version mismatch, or a genome
/// whose size does not match the stored architecture.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace nhc
