#pragma once

// Independent reference implementations used by the self-test suites and the
// test binaries. None of them shares code with the components they check.

#include "nhc/fitness.hpp"
#include "nhc/memory.hpp"

#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nhc::reference {

/// Memory model built from ordered containers: one std::list per write head
/// for the write order and one parent map per (write head, read head).
class LinkedMemory {
 public:
  LinkedMemory(int write_heads, int read_heads, int control_width, int data_width);

  void update_previous(const std::vector<bool>& gates, const std::vector<Eigen::VectorXd>& values,
                       const std::vector<Eigen::VectorXd>& erases);
  void write(const std::vector<Eigen::VectorXd>& control_words, const std::vector<bool>& free_write,
             const Eigen::VectorXd& data_word);
  /// Target of every read head, computed before any head moves.
  std::vector<Location> targets(const std::vector<ReadMode>& modes) const;
  /// Reads and returns [controls..., datas...] for the given targets, then frees.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> read(const std::vector<Location>& locations,
                                                   const std::vector<bool>& free_read);

  const std::set<Location>& used() const { return used_; }
  std::optional<Location> successor(int write_head, Location loc) const;
  std::optional<Location> predecessor(int write_head, Location loc) const;
  std::optional<Location> tail(int write_head) const;
  std::optional<Location> parent(int write_head, int read_head, Location loc) const;

 private:
  Location target(int head, ReadMode mode) const;
  Location fallback() const;
  Eigen::VectorXd control_row(Location loc) const;
  Eigen::VectorXd data_row(Location loc) const;
  void release(Location loc);

  int write_heads_, read_heads_, control_width_, data_width_;
  std::map<Location, Eigen::VectorXd> control_;
  std::map<Location, Eigen::VectorXd> data_;
  std::set<Location> used_;
  std::vector<std::list<Location>> order_;
  std::vector<std::vector<std::map<Location, Location>>> parents_;
  std::map<Location, long> written_at_;
  std::vector<std::optional<Location>> last_read_;
  std::optional<Location> first_head_last_write_;
  long clock_ = 0;
};

/// Compares every link, the usage set and the tails. Returns a description of
/// the first difference, or nullopt.
std::optional<std::string> compare_memory(const MemoryState<double>& mem, const LinkedMemory& ref);

/// Brute-force step scorer: explicit per-step correctness flags, an explicit
/// first-mistake search and a sorted copy of the raw Bus for the margin.
double score_steps(const std::vector<Eigen::VectorXd>& data, const std::vector<int>& ops,
                   const std::vector<Eigen::VectorXd>& raw_bus, const OracleTrace& oracle,
                   double m_max);
double margin_of(const Eigen::VectorXd& raw_bus, double m_max);

/// Postfix evaluation with an explicit operand stack, results reduced mod 10000.
long evaluate_postfix(const std::vector<double>& tokens, bool boolean);

/// One-hot grid worlds decoded cell by cell; used to re-execute plans.
struct GridSimulator {
  enum class Kind { Sokoban, Sliding };
  Kind kind;
  int side;
  int classes;
  std::vector<int> slot_of_class;

  static GridSimulator for_variant(const std::string& variant);
  std::vector<int> decode(const Eigen::VectorXd& word) const;
  /// nullopt when the move is blocked.
  std::optional<std::vector<int>> move(const std::vector<int>& cells, int action) const;
};

}  // namespace nhc::reference
