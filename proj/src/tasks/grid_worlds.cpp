#include "nhc/tasks/grid_worlds.hpp"

#include "nhc/config.hpp"

#include <algorithm>
#include <numeric>

namespace nhc {
namespace {

constexpr std::array<int, kMoveCount> kRowDelta = {-1, 0, 1, 0};
constexpr std::array<int, kMoveCount> kColDelta = {0, 1, 0, -1};

std::vector<int> identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

GridDomain::GridDomain(int side, int classes, std::vector<int> slot_of_class)
    : side_(side), classes_(classes), slot_of_class_(std::move(slot_of_class)),
      class_of_slot_(classes) {
  for (int c = 0; c < classes_; ++c) class_of_slot_[slot_of_class_[c]] = c;
}

Eigen::VectorXd GridDomain::encode(const GridState& s) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(encoding_width());
  for (int k = 0; k < cells(); ++k) v(k * classes_ + slot_of_class_[s[k]]) = 1.0;
  return v;
}

GridState GridDomain::decode(const Eigen::VectorXd& word) const {
  GridState s(cells(), 0);
  if (word.size() != encoding_width()) return s;
  for (int k = 0; k < cells(); ++k) {
    Eigen::Index slot = 0;
    word.segment(k * classes_, classes_).maxCoeff(&slot);
    s[k] = static_cast<std::uint8_t>(class_of_slot_[slot]);
  }
  return s;
}

GridState GridDomain::step(const GridState& s, int action) const {
  auto next = apply(s, action);
  return next ? *next : s;
}

Sokoban::Sokoban(int side, bool recoded)
    : GridDomain(side, 4, recoded ? std::vector<int>{2, 1, 0, 3} : identity(4)) {}

std::optional<GridState> Sokoban::apply(const GridState& s, int action) const {
  if (action < 0 || action >= kMoveCount) return std::nullopt;
  if (std::count(s.begin(), s.end(), kAgent) != 1) return std::nullopt;
  const int agent = static_cast<int>(std::find(s.begin(), s.end(), kAgent) - s.begin());
  const int r = agent / side_, c = agent % side_;
  auto cell = [&](int rr, int cc) -> int {
    if (rr < 0 || cc < 0 || rr >= side_ || cc >= side_) return -1;
    return rr * side_ + cc;
  };
  const int target = cell(r + kRowDelta[action], c + kColDelta[action]);
  if (target < 0 || s[target] == kWall || s[target] == kAgent) return std::nullopt;
  GridState next = s;
  if (s[target] == kBox) {
    const int beyond = cell(r + 2 * kRowDelta[action], c + 2 * kColDelta[action]);
    if (beyond < 0 || s[beyond] != kEmpty) return std::nullopt;
    next[beyond] = kBox;
  }
  next[target] = kAgent;
  next[agent] = kEmpty;
  return next;
}

GridState Sokoban::random_state(std::mt19937_64& rng) const {
  GridState s(cells(), kEmpty);
  std::vector<int> free;
  for (int r = 0; r < side_; ++r)
    for (int c = 0; c < side_; ++c) {
      const bool border = r == 0 || c == 0 || r == side_ - 1 || c == side_ - 1;
      if (border) s[r * side_ + c] = kWall;
      else free.push_back(r * side_ + c);
    }
  const int walls = std::uniform_int_distribution<int>(0, 2)(rng);
  const int boxes = std::uniform_int_distribution<int>(1, 5)(rng);
  auto take = [&]() {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng);
    const int cellIndex = free[k];
    free.erase(free.begin() + static_cast<std::ptrdiff_t>(k));
    return cellIndex;
  };
  for (int k = 0; k < walls; ++k) s[take()] = kWall;
  for (int k = 0; k < boxes; ++k) s[take()] = kBox;
  s[take()] = kAgent;
  return s;
}

SlidingPuzzle::SlidingPuzzle(int side) : GridDomain(side, side * side, identity(side * side)) {}

std::optional<GridState> SlidingPuzzle::apply(const GridState& s, int action) const {
  if (action < 0 || action >= kMoveCount) return std::nullopt;
  if (std::count(s.begin(), s.end(), 0) != 1) return std::nullopt;
  const int empty = static_cast<int>(std::find(s.begin(), s.end(), 0) - s.begin());
  // The moving tile sits opposite to the move direction, next to the empty cell.
  const int r = empty / side_ - kRowDelta[action];
  const int c = empty % side_ - kColDelta[action];
  if (r < 0 || c < 0 || r >= side_ || c >= side_) return std::nullopt;
  GridState next = s;
  std::swap(next[empty], next[r * side_ + c]);
  return next;
}

GridState SlidingPuzzle::random_state(std::mt19937_64& rng) const {
  GridState s(cells());
  std::iota(s.begin(), s.end(), 0);
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

std::unique_ptr<GridDomain> make_grid_domain(const std::string& variant) {
  if (variant == "default") return std::make_unique<Sokoban>(6, false);
  if (variant == "sokoban8") return std::make_unique<Sokoban>(8, false);
  if (variant == "recoded") return std::make_unique<Sokoban>(6, true);
  if (variant == "sliding") return std::make_unique<SlidingPuzzle>(3);
  throw ConfigError("unknown grid domain variant '" + variant + "'");
}

}  // namespace nhc
