#pragma once

#include "nhc/memory.hpp"

#include <stdexcept>
#include <string>

namespace nhc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sizes and switches of the algorithmic modules (Controller, Memory, Bus).
struct ArchitectureConfig {
  int controller_size = 6;  // L_C
  int control_word = 4;     // C
  int data_word = 1;        // D
  int operations = 2;       // L_B
  int write_heads = 1;
  int read_heads = 1;
  /// 0 sizes the memory per episode from the episode length.
  Location memory_size = 0;

  // Widths of the Input control signals routed to each module.
  int input_to_controller = 1;
  int input_to_memory = 1;
  int input_to_bus = 1;
  /// Width of the ALU control feedback c^a.
  int alu_feedback_width = 0;

  bool feedback_bus = true;
  bool feedback_alu = false;
  bool free_gates = false;
  bool ancestry = true;
  bool prev_update = true;

  int read_modes() const { return read_mode_count(read_heads, write_heads, ancestry); }

  int controller_input_width() const {
    return input_to_controller + (feedback_bus ? operations : 0) +
           (feedback_alu ? alu_feedback_width : 0) + read_heads * control_word;
  }
  int interface_input_width() const { return input_to_memory + controller_size; }
  int bus_input_width() const { return input_to_bus + controller_size + read_heads * control_word; }

  void validate() const {
    auto positive = [](int v, const char* name) {
      if (v < 1) throw ConfigError(std::string(name) + " must be >= 1");
    };
    positive(controller_size, "controller_size");
    positive(control_word, "control_word");
    positive(data_word, "data_word");
    positive(operations, "operations");
    positive(write_heads, "write_heads");
    positive(read_heads, "read_heads");
    positive(input_to_controller, "input_to_controller");
    positive(input_to_memory, "input_to_memory");
    positive(input_to_bus, "input_to_bus");
    if (feedback_alu && alu_feedback_width < 1)
      throw ConfigError("alu feedback enabled with zero width");
    if (memory_size < 0) throw ConfigError("memory_size must be >= 0");
  }
};

enum class Ablation { None, NoAncestry, NoPrevUpdate };

inline Ablation parse_ablation(const std::string& name) {
  if (name.empty() || name == "none") return Ablation::None;
  if (name == "anc" || name == "nhc-anc") return Ablation::NoAncestry;
  if (name == "prev" || name == "nhc-prev") return Ablation::NoPrevUpdate;
  throw ConfigError("unknown ablation '" + name + "'");
}

inline const char* ablation_name(Ablation a) {
  switch (a) {
    case Ablation::None: return "none";
    case Ablation::NoAncestry: return "anc";
    case Ablation::NoPrevUpdate: return "prev";
  }
  return "none";
}

/// NHC-anc drops the parent/child read modes; NHC-prev drops the
/// previous-location update and compensates with a second write head.
inline ArchitectureConfig apply_ablation(ArchitectureConfig cfg, Ablation a) {
  switch (a) {
    case Ablation::None: break;
    case Ablation::NoAncestry: cfg.ancestry = false; break;
    case Ablation::NoPrevUpdate:
      cfg.prev_update = false;
      cfg.write_heads = 2;
      break;
  }
  return cfg;
}

}  // namespace nhc
