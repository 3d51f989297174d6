#pragma once

// Forward passes of the learned layers: Controller, Memory interface, Bus.

#include "nhc/genome.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace nhc {

/// Heaviside step with H(0) = 1.
template <typename Scalar>
std::uint8_t heaviside(Scalar x) {
  return x >= Scalar(0) ? 1 : 0;
}

/// Index of the first maximal entry.
template <typename Derived>
int argmax_first(const Eigen::MatrixBase<Derived>& v) {
  int best = 0;
  for (int k = 1; k < v.size(); ++k)
    if (v(k) > v(best)) best = k;
  return best;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> one_hot(int index, int width) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(width);
  v(index) = Scalar(1);
  return v;
}

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// c^c = tanh(W_c [c^{i->c}; c^b_{t-1}; c^a_{t-1}; c^m_{t-1}] + b_c). Disabled
/// feedback blocks are omitted from the concatenation.
template <typename Scalar>
Vec<Scalar> controller_forward(const AffineLayer<Scalar>& layer, const ArchitectureConfig& cfg,
                               const Vec<Scalar>& from_input, const Vec<Scalar>& prev_bus,
                               const Vec<Scalar>& prev_alu, const Vec<Scalar>& prev_mem_control) {
  Vec<Scalar> x(cfg.controller_input_width());
  Eigen::Index at = 0;
  auto put = [&](const Vec<Scalar>& part) {
    x.segment(at, part.size()) = part;
    at += part.size();
  };
  put(from_input);
  if (cfg.feedback_bus) put(prev_bus);
  if (cfg.feedback_alu) put(prev_alu);
  put(prev_mem_control);
  return layer(x).array().tanh().matrix();
}

template <typename Scalar>
struct BusOutput {
  int operation = 0;
  Vec<Scalar> raw;
};

/// c^b = onehot(W_b [c^{i->b}; c^c; c^m] + b_b); ties go to the lowest index.
template <typename Scalar>
BusOutput<Scalar> bus_forward(const AffineLayer<Scalar>& layer, const Vec<Scalar>& from_input,
                              const Vec<Scalar>& controller_out, const Vec<Scalar>& mem_control) {
  Vec<Scalar> x(from_input.size() + controller_out.size() + mem_control.size());
  x << from_input, controller_out, mem_control;
  BusOutput<Scalar> out;
  out.raw = layer(x);
  out.operation = argmax_first(out.raw);
  return out;
}

template <typename Scalar>
struct InterfaceSignals {
  std::vector<Vec<Scalar>> write_vec;        // per write head, length C
  std::vector<Vec<Scalar>> prev_write_vec;   // per read head, length C
  std::vector<Vec<Scalar>> prev_erase_vec;   // per read head, in (0,1)^C
  std::vector<std::uint8_t> prev_gate;       // per read head
  std::vector<int> read_mode;                // active mode index per read head
  std::vector<std::uint8_t> free_write;      // per write head
  std::vector<std::uint8_t> free_read;       // per read head
};

/// Evaluates every memory interface from x_m = [c^{i->m}; c^c].
template <typename Scalar>
InterfaceSignals<Scalar> memory_interface_forward(const Parameters<Scalar>& params,
                                                  const ArchitectureConfig& cfg,
                                                  const Vec<Scalar>& from_input,
                                                  const Vec<Scalar>& controller_out) {
  Vec<Scalar> x(from_input.size() + controller_out.size());
  x << from_input, controller_out;
  const int c = cfg.control_word;
  const int hw = cfg.write_heads;
  const int hr = cfg.read_heads;

  InterfaceSignals<Scalar> s;
  const Vec<Scalar> write = params[Block::Write](x);
  for (int i = 0; i < hw; ++i) s.write_vec.push_back(write.segment(i * c, c));

  if (cfg.prev_update) {
    const Vec<Scalar> value = params[Block::PrevWrite](x);
    const Vec<Scalar> erase =
        (Scalar(1) / (Scalar(1) + (-params[Block::PrevErase](x).array()).exp())).matrix();
    const Vec<Scalar> gate = params[Block::PrevGate](x);
    for (int j = 0; j < hr; ++j) {
      s.prev_write_vec.push_back(value.segment(j * c, c));
      s.prev_erase_vec.push_back(erase.segment(j * c, c));
      s.prev_gate.push_back(heaviside(gate(j)));
    }
  } else {
    s.prev_gate.assign(hr, 0);
    s.prev_write_vec.assign(hr, Vec<Scalar>::Zero(c));
    s.prev_erase_vec.assign(hr, Vec<Scalar>::Zero(c));
  }

  const int modes = cfg.read_modes();
  const Vec<Scalar> logits = params[Block::ReadMode](x);
  for (int j = 0; j < hr; ++j) s.read_mode.push_back(argmax_first(logits.segment(j * modes, modes)));

  if (cfg.free_gates) {
    const Vec<Scalar> fw = params[Block::FreeWrite](x);
    const Vec<Scalar> fr = params[Block::FreeRead](x);
    for (int i = 0; i < hw; ++i) s.free_write.push_back(heaviside(fw(i)));
    for (int j = 0; j < hr; ++j) s.free_read.push_back(heaviside(fr(j)));
  } else {
    s.free_write.assign(hw, 0);
    s.free_read.assign(hr, 0);
  }
  return s;
}

}  // namespace nhc
