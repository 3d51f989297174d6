#include "nhc/tasks/task.hpp"

namespace nhc {

TaskSample Task::generate(int level, std::uint64_t seed) const {
  if (level < 1) throw GeneratorError("level must be >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(level)};
  std::mt19937_64 rng(seq);
  TaskSample s;
  s.task = name();
  s.variant = variant();
  s.seed = seed;
  s.level = level;
  s.complexity = level;
  if (level == kMixedLevel)
    s.complexity = std::uniform_int_distribution<int>(1, kMixedLevel - 1)(rng);
  fill_instance(s, rng);
  s.oracle = oracle_trace(s);
  return s;
}

Replay replay_oracle(const Task& task, const TaskSample& sample) {
  auto module = task.make_module(sample);
  Replay replay;
  Eigen::VectorXd previous = Eigen::VectorXd::Zero(module->data_width());
  for (std::size_t k = 0; k < sample.oracle.size(); ++k) {
    replay.inputs.push_back(module->input(previous));
    replay.outputs.push_back(module->alu(sample.oracle[k].data, sample.oracle[k].operation));
    previous = replay.outputs.back().data;
    if (module->halted()) {
      replay.halted_after = k + 1;
      break;
    }
  }
  return replay;
}

bool closes_the_loop(const Task& task, const TaskSample& sample) {
  const Replay replay = replay_oracle(task, sample);
  return replay.halted_after == sample.oracle.size() && task.verify_replay(sample, replay);
}

Eigen::VectorXd concat(std::initializer_list<Eigen::VectorXd> parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.size();
  Eigen::VectorXd out(n);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

Eigen::VectorXd scalar_word(double v) { return Eigen::VectorXd::Constant(1, v); }

}  // namespace nhc
