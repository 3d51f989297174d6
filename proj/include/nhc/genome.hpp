#pragma once

#include "nhc/config.hpp"

#include <Eigen/Dense>

#include <array>
#include <string_view>

namespace nhc {

/// Flat parameter vector of the three algorithmic modules.
using Genome = Eigen::VectorXd;

template <typename Scalar>
struct AffineLayer {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> weight;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bias;

  Eigen::Index outputs() const { return weight.rows(); }
  Eigen::Index inputs() const { return weight.cols(); }
  Eigen::Index parameter_count() const { return weight.size() + bias.size(); }

  template <typename Derived>
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> operator()(const Eigen::MatrixBase<Derived>& x) const {
    return weight * x + bias;
  }
};

/// Genome blocks, in storage order.
enum class Block : int {
  Controller,
  Write,
  PrevWrite,
  PrevErase,
  PrevGate,
  ReadMode,
  FreeWrite,
  FreeRead,
  Bus,
};
inline constexpr int kBlockCount = 9;

std::string_view block_name(Block b);

struct BlockShape {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index offset = 0;
  Eigen::Index size() const { return rows * cols + rows; }
};

/// Offsets of every block. Each block is its weight matrix (row-major)
/// followed by its bias. Disabled blocks have zero rows.
struct GenomeLayout {
  std::array<BlockShape, kBlockCount> blocks{};
  Eigen::Index total = 0;
  const BlockShape& operator[](Block b) const { return blocks[static_cast<int>(b)]; }
};

GenomeLayout genome_layout(const ArchitectureConfig& cfg);
Eigen::Index genome_size(const ArchitectureConfig& cfg);

template <typename Scalar>
struct Parameters {
  std::array<AffineLayer<Scalar>, kBlockCount> layers;
  const AffineLayer<Scalar>& operator[](Block b) const { return layers[static_cast<int>(b)]; }
  AffineLayer<Scalar>& operator[](Block b) { return layers[static_cast<int>(b)]; }
};

template <typename Scalar>
Parameters<Scalar> unpack(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& theta,
                          const ArchitectureConfig& cfg) {
  const GenomeLayout layout = genome_layout(cfg);
  if (theta.size() != layout.total) throw ConfigError("genome length does not match config");
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Parameters<Scalar> p;
  for (int k = 0; k < kBlockCount; ++k) {
    const BlockShape& s = layout.blocks[k];
    p.layers[k].weight =
        Eigen::Map<const RowMajor>(theta.data() + s.offset, s.rows, s.cols);
    p.layers[k].bias = theta.segment(s.offset + s.rows * s.cols, s.rows);
  }
  return p;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pack(const Parameters<Scalar>& p,
                                              const ArchitectureConfig& cfg) {
  const GenomeLayout layout = genome_layout(cfg);
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> theta(layout.total);
  for (int k = 0; k < kBlockCount; ++k) {
    const BlockShape& s = layout.blocks[k];
    if (p.layers[k].weight.rows() != s.rows || p.layers[k].weight.cols() != s.cols ||
        p.layers[k].bias.size() != s.rows)
      throw ConfigError("parameter block shape does not match config");
    Eigen::Map<RowMajor>(theta.data() + s.offset, s.rows, s.cols) = p.layers[k].weight;
    theta.segment(s.offset + s.rows * s.cols, s.rows) = p.layers[k].bias;
  }
  return theta;
}

/// Zero-initialized parameters with the right shapes.
Parameters<double> zero_parameters(const ArchitectureConfig& cfg);

}  // namespace nhc
