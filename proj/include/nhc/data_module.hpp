#pragma once

#include <Eigen/Dense>

namespace nhc {

/// Output of the Input module for one step.
struct InputSignals {
  Eigen::VectorXd data;           // d^i, written to the data memory
  Eigen::VectorXd to_controller;  // c^{i->c}
  Eigen::VectorXd to_memory;      // c^{i->m}
  Eigen::VectorXd to_bus;         // c^{i->b}
};

struct AluOutput {
  Eigen::VectorXd data;     // d^out
  Eigen::VectorXd control;  // c^a
};

/// Task-specific Input + ALU pair bridging the data and control streams.
/// One instance drives one episode and carries that episode's phase state.
class DataModule {
 public:
  virtual ~DataModule() = default;

  /// Called once at the start of each step with the previous ALU output.
  virtual InputSignals input(const Eigen::VectorXd& previous_output) = 0;

  /// Applies `operation` (the Bus choice) to the data read from memory.
  virtual AluOutput alu(const Eigen::VectorXd& memory_data, int operation) = 0;

  /// True once the module's stop rule fired; checked after every step.
  virtual bool halted() const = 0;

  virtual int data_width() const = 0;
};

}  // namespace nhc
