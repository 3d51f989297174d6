#include "nhc/nes.hpp"

#include "nhc/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhc {

void NesConfig::validate() const {
  if (population < 2) throw ConfigError("population must be >= 2");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("lambda must be in (0, 1]");
  if (max_iterations < 0) throw ConfigError("max_iterations must be >= 0");
  if (restart_iterations < 1) throw ConfigError("restart_iterations must be >= 1");
}

Eigen::VectorXd initial_genome(Eigen::Index size, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, kInitialStd);
  Eigen::VectorXd theta(size);
  for (Eigen::Index k = 0; k < size; ++k) theta(k) = normal(rng);
  return theta;
}

std::vector<Eigen::VectorXd> sample_population(Eigen::Index size, int population,
                                               std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXd> eps(population, Eigen::VectorXd(size));
  for (auto& e : eps)
    for (Eigen::Index k = 0; k < size; ++k) e(k) = normal(rng);
  return eps;
}

Eigen::VectorXd rank_transform(std::span<const double> fitness) {
  const auto p = static_cast<Eigen::Index>(fitness.size());
  std::vector<Eigen::Index> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return fitness[a] > fitness[b]; });
  Eigen::VectorXd raw(p);
  const double top = std::log(static_cast<double>(p) / 2.0 + 1.0);
  for (Eigen::Index rank = 0; rank < p; ++rank)
    raw(rank) = std::max(0.0, top - std::log(static_cast<double>(rank + 1)));
  raw /= raw.sum();
  Eigen::VectorXd u(p);
  for (Eigen::Index rank = 0; rank < p; ++rank)
    u(order[rank]) = raw(rank) - 1.0 / static_cast<double>(p);
  return u;
}

Eigen::VectorXd nes_update(const Eigen::VectorXd& theta, std::span<const Eigen::VectorXd> eps,
                           const Eigen::VectorXd& utilities, const NesConfig& cfg) {
  Eigen::VectorXd step = Eigen::VectorXd::Zero(theta.size());
  for (std::size_t o = 0; o < eps.size(); ++o) step += utilities(o) * eps[o];
  const double scale = cfg.alpha / (static_cast<double>(eps.size()) * cfg.sigma);
  return cfg.lambda * (theta + scale * step);
}

bool RestartMonitor::observe(double best_fitness) {
  if (has_best_ && best_fitness > best_) {
    best_ = best_fitness;
    stale_ = 0;
    return false;
  }
  if (!has_best_) {
    best_ = best_fitness;
    has_best_ = true;
  }
  return ++stale_ >= window_;
}

void RestartMonitor::reset() {
  stale_ = 0;
  best_ = 0.0;
  has_best_ = false;
}

}  // namespace nhc
