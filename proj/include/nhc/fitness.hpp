#pragma once

#include "nhc/nhc.hpp"

#include <optional>
#include <span>

namespace nhc {

/// Per-sample fitness ceiling: every step contributes data (1) + operation (1).
inline constexpr double kMaxSampleFitness = 2.0;

/// clip((c1/c2 - 1) / m_max, 0, 1) over the two largest raw Bus values.
/// c1 <= 0 gives 0; c2 <= 0 < c1 gives 1.
double margin_penalty(const Eigen::VectorXd& raw_bus, double m_max);

struct SampleFitness {
  double fitness = 0.0;
  /// Number of leading fully correct steps (T_e).
  std::size_t correct_steps = 0;
  /// Step index (0-based) of the first mistake, if any.
  std::optional<std::size_t> first_error;
  bool perfect() const { return fitness == kMaxSampleFitness; }
};

/// (1/T_max) * sum over the correct prefix of [1 + margin]. Steps missing from
/// the trace (early halt) count as mistakes.
SampleFitness sample_fitness(const EpisodeTrace& trace, const OracleTrace& oracle, double m_max);

/// Mean of per-sample fitness values.
double batch_fitness(std::span<const SampleFitness> samples);

}  // namespace nhc
