#include "nhc/genome.hpp"

namespace nhc {

std::string_view block_name(Block b) {
  static constexpr std::string_view names[kBlockCount] = {
      "controller", "write", "prev_write", "prev_erase", "prev_gate",
      "read_mode",  "free_write", "free_read", "bus"};
  return names[static_cast<int>(b)];
}

GenomeLayout genome_layout(const ArchitectureConfig& cfg) {
  cfg.validate();
  const Eigen::Index xm = cfg.interface_input_width();
  const Eigen::Index c = cfg.control_word;
  const Eigen::Index hr = cfg.read_heads;
  const Eigen::Index hw = cfg.write_heads;
  const bool prev = cfg.prev_update;
  const bool free = cfg.free_gates;

  GenomeLayout layout;
  auto set = [&](Block b, Eigen::Index rows, Eigen::Index cols) {
    layout.blocks[static_cast<int>(b)] = BlockShape{rows, cols, 0};
  };
  set(Block::Controller, cfg.controller_size, cfg.controller_input_width());
  set(Block::Write, hw * c, xm);
  set(Block::PrevWrite, prev ? hr * c : 0, xm);
  set(Block::PrevErase, prev ? hr * c : 0, xm);
  set(Block::PrevGate, prev ? hr : 0, xm);
  set(Block::ReadMode, hr * cfg.read_modes(), xm);
  set(Block::FreeWrite, free ? hw : 0, xm);
  set(Block::FreeRead, free ? hr : 0, xm);
  set(Block::Bus, cfg.operations, cfg.bus_input_width());

  Eigen::Index offset = 0;
  for (auto& s : layout.blocks) {
    s.offset = offset;
    offset += s.size();
  }
  layout.total = offset;
  return layout;
}

Eigen::Index genome_size(const ArchitectureConfig& cfg) { return genome_layout(cfg).total; }

Parameters<double> zero_parameters(const ArchitectureConfig& cfg) {
  return unpack<double>(Genome::Zero(genome_size(cfg)), cfg);
}

}  // namespace nhc
