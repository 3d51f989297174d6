#pragma once

// Discrete grid domains for the search and plan tasks. A state is one class
// index per cell; the data word is a per-cell one-hot encoding.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nhc {

using GridState = std::vector<std::uint8_t>;

enum GridAction : int { kUp = 0, kRight = 1, kDown = 2, kLeft = 3, kNoop = 4 };
inline constexpr int kMoveCount = 4;

class GridDomain {
 public:
  GridDomain(int side, int classes, std::vector<int> slot_of_class);
  virtual ~GridDomain() = default;

  int side() const { return side_; }
  int cells() const { return side_ * side_; }
  int classes() const { return classes_; }
  int encoding_width() const { return cells() * classes_; }

  Eigen::VectorXd encode(const GridState& s) const;
  /// Arg-max per cell; ties resolve to the lowest slot.
  GridState decode(const Eigen::VectorXd& word) const;

  /// Successor under a move, or nullopt if the move has no effect.
  virtual std::optional<GridState> apply(const GridState& s, int action) const = 0;
  virtual GridState random_state(std::mt19937_64& rng) const = 0;

  bool applicable(const GridState& s, int action) const { return apply(s, action).has_value(); }
  /// Result of a move; unchanged state when the move is blocked.
  GridState step(const GridState& s, int action) const;

 protected:
  int side_;
  int classes_;
  std::vector<int> slot_of_class_;
  std::vector<int> class_of_slot_;
};

/// Sokoban: walled border, inner walls, pushable boxes, one agent.
class Sokoban final : public GridDomain {
 public:
  enum Cell : std::uint8_t { kAgent = 0, kBox = 1, kWall = 2, kEmpty = 3 };

  /// `recoded` swaps the one-hot slots of agent and wall.
  explicit Sokoban(int side = 6, bool recoded = false);

  std::optional<GridState> apply(const GridState& s, int action) const override;
  GridState random_state(std::mt19937_64& rng) const override;
};

/// Sliding puzzle: tile 0 is the empty space; a move slides the adjacent tile
/// in the move direction into the empty space.
class SlidingPuzzle final : public GridDomain {
 public:
  explicit SlidingPuzzle(int side = 3);

  std::optional<GridState> apply(const GridState& s, int action) const override;
  GridState random_state(std::mt19937_64& rng) const override;
};

/// "default"/"sokoban8"/"recoded"/"sliding".
std::unique_ptr<GridDomain> make_grid_domain(const std::string& variant);

}  // namespace nhc
