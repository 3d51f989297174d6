#include "nhc/nhc.hpp"

#include <algorithm>

namespace nhc {

NhcState initial_state(const ArchitectureConfig& cfg, Location memory_size, int data_width,
                       int alu_width) {
  NhcState s;
  s.memory = MemoryState<double>(memory_size, cfg.control_word, data_width, cfg.write_heads,
                                 cfg.read_heads);
  s.last_controller_out = Eigen::VectorXd::Zero(cfg.controller_size);
  s.last_mem_control = Eigen::VectorXd::Zero(cfg.read_heads * cfg.control_word);
  s.last_bus = Eigen::VectorXd::Zero(cfg.operations);
  s.last_alu_control = Eigen::VectorXd::Zero(alu_width);
  s.last_output = Eigen::VectorXd::Zero(data_width);
  return s;
}

StepResult nhc_step(const Parameters<double>& params, const ArchitectureConfig& cfg,
                    NhcState& state, DataModule& module) {
  ++state.step;
  const InputSignals in = module.input(state.last_output);

  const Eigen::VectorXd controller_out =
      controller_forward(params[Block::Controller], cfg, in.to_controller, state.last_bus,
                         state.last_alu_control, state.last_mem_control);
  const InterfaceSignals<double> sig =
      memory_interface_forward(params, cfg, in.to_memory, controller_out);

  auto& mem = state.memory;
  if (cfg.prev_update) update_previous(mem, sig.prev_gate, sig.prev_write_vec, sig.prev_erase_vec);
  write_step(mem, sig.write_vec, sig.free_write, in.data);

  std::vector<Location> targets(cfg.read_heads);
  for (int j = 0; j < cfg.read_heads; ++j)
    targets[j] = resolve_read(
        mem, j, decode_read_mode(sig.read_mode[j], cfg.read_heads, cfg.write_heads, cfg.ancestry));
  const Readout<double> readout = read_step(mem, targets, sig.free_read);

  const BusOutput<double> bus =
      bus_forward(params[Block::Bus], in.to_bus, controller_out, readout.control);
  AluOutput alu = module.alu(readout.data, bus.operation);

  StepResult r;
  r.memory_data = readout.data;
  r.operation = bus.operation;
  r.raw_bus = bus.raw;
  r.output = alu.data;
  r.halt = module.halted();
  r.heads.write = mem.prev_write;
  r.heads.read = targets;
  r.heads.read_mode = sig.read_mode;
  r.heads.free_write = sig.free_write;
  r.heads.free_read = sig.free_read;
  r.heads.prev_gate = sig.prev_gate;

  state.last_controller_out = controller_out;
  state.last_mem_control = readout.control;
  state.last_bus = one_hot<double>(bus.operation, cfg.operations);
  state.last_alu_control = std::move(alu.control);
  state.last_output = std::move(alu.data);
  return r;
}

Location episode_memory_size(const ArchitectureConfig& cfg, std::size_t max_steps) {
  if (cfg.memory_size > 0) return cfg.memory_size;
  return static_cast<Location>(max_steps) * cfg.write_heads + 1;
}

EpisodeTrace run_episode(const Parameters<double>& params, const ArchitectureConfig& cfg,
                         DataModule& module, std::size_t max_steps,
                         const EpisodeOptions& options) {
  NhcState state = initial_state(cfg, episode_memory_size(cfg, max_steps), module.data_width(),
                                 cfg.alu_feedback_width);
  EpisodeTrace trace;
  trace.steps.reserve(options.stop_on_mismatch ? 16 : max_steps);
  for (std::size_t k = 0; k < max_steps; ++k) {
    StepResult r;
    try {
      r = nhc_step(params, cfg, state, module);
    } catch (const MemoryFull&) {
      trace.memory_full = true;
      break;
    }
    const bool mismatch = options.stop_on_mismatch &&
                          (r.operation != (*options.stop_on_mismatch)[k].operation ||
                           r.memory_data != (*options.stop_on_mismatch)[k].data);
    StepRecord rec{std::move(r.memory_data), r.operation, std::move(r.raw_bus), std::nullopt};
    if (options.record_heads) rec.heads = std::move(r.heads);
    trace.steps.push_back(std::move(rec));
    if (r.halt) {
      trace.halted = true;
      break;
    }
    if (mismatch) break;
  }
  return trace;
}

}  // namespace nhc
