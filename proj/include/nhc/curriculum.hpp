#pragma once

// Curriculum progression, minibatch composition and the bad-memories buffer.

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

namespace nhc {

/// A sample is fully determined by its generator seed and level.
struct SampleKey {
  std::uint64_t seed = 0;
  int level = 1;

  bool operator==(const SampleKey&) const = default;
};

struct CurriculumConfig {
  int batch_size = 32;
  int perfect_iterations = 750;  // doubled once learning happened in a level
  int bad_memory_capacity = 200;
  double margin = 0.1;  // m_max
  int top_level = 11;
};

/// FIFO of failed samples; duplicates allowed.
class BadMemories {
 public:
  explicit BadMemories(std::size_t capacity = 200) : capacity_(capacity) {}

  void push(const SampleKey& key);
  void clear() { items_.clear(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t capacity() const { return capacity_; }
  const std::deque<SampleKey>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::deque<SampleKey> items_;
};

struct LevelRecord {
  int level = 1;
  long iterations = 0;
  long learning_iterations = 0;
};

struct CurriculumState {
  int level = 1;
  int consecutive_perfect = 0;
  int required_perfect = 750;
  bool learning_triggered_in_level = false;
  bool finished = false;  // top level solved
  std::vector<LevelRecord> log{LevelRecord{}};
};

CurriculumState initial_curriculum(const CurriculumConfig& cfg);

/// floor(N/3) samples from uniformly chosen earlier levels (level 1 when there
/// are none), floor(N/3) replayed from `bad` (fresh when it is empty), and the
/// rest fresh at the current level.
std::vector<SampleKey> compose_minibatch(int level, int batch_size, std::mt19937_64& rng,
                                         const BadMemories& bad);

/// Updates counters after one iteration. Returns true if the level was solved.
bool curriculum_advance(CurriculumState& state, const CurriculumConfig& cfg, bool perfect,
                        bool learning_happened);

}  // namespace nhc
