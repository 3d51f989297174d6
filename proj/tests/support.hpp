#pragma once

#include "nhc/genome.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace nhc::test {

/// Copy solver written by hand: Halt (stay on the first location) while the
/// sequence is presented and on the first output step, Forward afterwards.
/// Bus: O unless the input flags the output phase (c3), then M.
inline Parameters<double> hand_copy_parameters(const ArchitectureConfig& arch) {
  Parameters<double> p = zero_parameters(arch);
  // Controller unit 0 ~ "previous Bus operation was M".
  const int prev_bus_m = arch.input_to_controller + 1;
  p[Block::Controller].weight(0, prev_bus_m) = 5.0;

  auto& modes = p[Block::ReadMode];
  modes.bias.setConstant(-10.0);
  const int halt = 0;
  const int forward = arch.read_heads + 1;  // B1, F1, ...
  modes.bias(halt) = 0.5;
  modes.bias(forward) = 0.0;
  modes.weight(forward, arch.input_to_memory + 0) = 1.0;

  if (arch.prev_update) p[Block::PrevGate].bias.setConstant(-1.0);
  if (arch.free_gates) {
    p[Block::FreeWrite].bias.setConstant(-1.0);
    p[Block::FreeRead].bias.setConstant(-1.0);
  }
  auto& bus = p[Block::Bus];
  bus.bias(0) = 0.5;
  bus.weight(1, 3) = 1.0;
  return p;
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("nhc-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path_.string(); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace nhc::test
