#include "nhc/curriculum.hpp"

namespace nhc {

void BadMemories::push(const SampleKey& key) {
  if (capacity_ == 0) return;
  if (items_.size() == capacity_) items_.pop_front();
  items_.push_back(key);
}

CurriculumState initial_curriculum(const CurriculumConfig& cfg) {
  CurriculumState s;
  s.required_perfect = cfg.perfect_iterations;
  return s;
}

std::vector<SampleKey> compose_minibatch(int level, int batch_size, std::mt19937_64& rng,
                                         const BadMemories& bad) {
  const int third = batch_size / 3;
  std::vector<SampleKey> batch;
  batch.reserve(batch_size);
  for (int k = 0; k < third; ++k) {
    const int previous =
        level > 1 ? std::uniform_int_distribution<int>(1, level - 1)(rng) : 1;
    batch.push_back({rng(), previous});
  }
  for (int k = 0; k < third; ++k) {
    if (bad.empty()) {
      batch.push_back({rng(), level});
    } else {
      const auto i = std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(rng);
      batch.push_back(bad.items()[i]);
    }
  }
  while (static_cast<int>(batch.size()) < batch_size) batch.push_back({rng(), level});
  return batch;
}

bool curriculum_advance(CurriculumState& state, const CurriculumConfig& cfg, bool perfect,
                        bool learning_happened) {
  LevelRecord& record = state.log.back();
  ++record.iterations;
  if (learning_happened) {
    ++record.learning_iterations;
    state.learning_triggered_in_level = true;
    state.required_perfect = 2 * cfg.perfect_iterations;
  }
  state.consecutive_perfect = perfect ? state.consecutive_perfect + 1 : 0;
  if (state.consecutive_perfect < state.required_perfect) return false;

  state.consecutive_perfect = 0;
  state.learning_triggered_in_level = false;
  state.required_perfect = cfg.perfect_iterations;
  if (state.level >= cfg.top_level) {
    state.finished = true;
  } else {
    ++state.level;
    state.log.push_back(LevelRecord{state.level, 0, 0});
  }
  return true;
}

}  // namespace nhc
