#include "nhc/fitness.hpp"

#include <algorithm>
#include <limits>

namespace nhc {

double margin_penalty(const Eigen::VectorXd& raw_bus, double m_max) {
  double first = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  for (double v : raw_bus) {
    if (v > first) {
      second = first;
      first = v;
    } else if (v > second) {
      second = v;
    }
  }
  if (!(first > 0.0)) return 0.0;
  if (!(second > 0.0)) return 1.0;
  return std::clamp((first / second - 1.0) / m_max, 0.0, 1.0);
}

SampleFitness sample_fitness(const EpisodeTrace& trace, const OracleTrace& oracle, double m_max) {
  SampleFitness out;
  const std::size_t t_max = oracle.size();
  if (t_max == 0) return out;
  double sum = 0.0;
  std::size_t k = 0;
  for (; k < t_max; ++k) {
    if (k >= trace.steps.size()) break;
    const StepRecord& step = trace.steps[k];
    const bool data_ok = step.memory_data == oracle[k].data;
    const bool op_ok = step.operation == oracle[k].operation;
    if (!data_ok || !op_ok) break;
    sum += 1.0 + margin_penalty(step.raw_bus, m_max);
  }
  out.correct_steps = k;
  if (k < t_max) out.first_error = k;
  out.fitness = sum / static_cast<double>(t_max);
  return out;
}

double batch_fitness(std::span<const SampleFitness> samples) {
  if (samples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : samples) total += s.fitness;
  return total / static_cast<double>(samples.size());
}

}  // namespace nhc
