#pragma once

// Full Neural Harvard Computer step and episode loop.

#include "nhc/config.hpp"
#include "nhc/data_module.hpp"
#include "nhc/genome.hpp"
#include "nhc/layers.hpp"
#include "nhc/memory.hpp"

#include <optional>
#include <vector>

namespace nhc {

struct OracleStep {
  Eigen::VectorXd data;  // expected d^m (all read heads concatenated)
  int operation = 0;     // expected Bus operation
};
using OracleTrace = std::vector<OracleStep>;

struct NhcState {
  MemoryState<double> memory;
  Eigen::VectorXd last_controller_out;
  Eigen::VectorXd last_mem_control;
  Eigen::VectorXd last_bus;
  Eigen::VectorXd last_alu_control;
  Eigen::VectorXd last_output;
  std::int64_t step = 0;
};

NhcState initial_state(const ArchitectureConfig& cfg, Location memory_size, int data_width,
                       int alu_width);

/// Head activity of one step, kept for trace output.
struct HeadRecord {
  std::vector<Location> write;
  std::vector<Location> read;
  std::vector<int> read_mode;
  std::vector<std::uint8_t> free_write;
  std::vector<std::uint8_t> free_read;
  std::vector<std::uint8_t> prev_gate;
};

struct StepResult {
  Eigen::VectorXd memory_data;  // d^m
  int operation = 0;
  Eigen::VectorXd raw_bus;
  Eigen::VectorXd output;       // d^out
  bool halt = false;
  HeadRecord heads;
};

/// One full cycle: Input, Controller, Memory (prev update, write, read), Bus,
/// ALU. Throws MemoryFull when no location is left to write to.
StepResult nhc_step(const Parameters<double>& params, const ArchitectureConfig& cfg,
                    NhcState& state, DataModule& module);

struct StepRecord {
  Eigen::VectorXd memory_data;
  int operation = 0;
  Eigen::VectorXd raw_bus;
  std::optional<HeadRecord> heads;
};

struct EpisodeTrace {
  std::vector<StepRecord> steps;
  bool halted = false;
  bool memory_full = false;
};

struct EpisodeOptions {
  /// When set, the episode stops after the first step that disagrees with
  /// this trace. Fitness only counts steps up to the first mistake, so the
  /// score is unchanged.
  const OracleTrace* stop_on_mismatch = nullptr;
  bool record_heads = false;
};

/// Memory capacity for an episode of `max_steps` steps.
Location episode_memory_size(const ArchitectureConfig& cfg, std::size_t max_steps);

EpisodeTrace run_episode(const Parameters<double>& params, const ArchitectureConfig& cfg,
                         DataModule& module, std::size_t max_steps,
                         const EpisodeOptions& options = {});

}  // namespace nhc
