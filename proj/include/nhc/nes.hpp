#pragma once

// Natural Evolution Strategies with rank-based fitness shaping.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace nhc {

struct NesConfig {
  int population = 20;  // P
  double alpha = 0.01;
  double sigma = 0.1;
  double lambda = 0.9995;  // weight decay multiplier
  int max_iterations = 20000;
  int restart_iterations = 2000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Standard deviation of the initial genome components.
inline constexpr double kInitialStd = 0.1;

Eigen::VectorXd initial_genome(Eigen::Index size, std::mt19937_64& rng);

/// P standard-normal perturbations of length `size`; offspring o evaluates
/// theta + sigma * eps[o].
std::vector<Eigen::VectorXd> sample_population(Eigen::Index size, int population,
                                               std::mt19937_64& rng);

/// Log-rank utilities, summing to zero. Higher fitness gets a larger utility;
/// equal fitnesses keep their order of arrival.
Eigen::VectorXd rank_transform(std::span<const double> fitness);

/// lambda * (theta + alpha / (P sigma) * sum_o u_o eps_o)
Eigen::VectorXd nes_update(const Eigen::VectorXd& theta, std::span<const Eigen::VectorXd> eps,
                           const Eigen::VectorXd& utilities, const NesConfig& cfg);

/// Counts iterations without a new best fitness.
class RestartMonitor {
 public:
  explicit RestartMonitor(int window) : window_(window) {}

  /// Returns true when `window` consecutive observations brought no new best.
  bool observe(double best_fitness);
  void reset();

  int window() const { return window_; }
  int stale() const { return stale_; }
  double best() const { return best_; }
  bool has_best() const { return has_best_; }
  void restore(int stale, double best, bool has_best) {
    stale_ = stale;
    best_ = best;
    has_best_ = has_best;
  }

 private:
  int window_;
  int stale_ = 0;
  double best_ = 0.0;
  bool has_best_ = false;
};

}  // namespace nhc
