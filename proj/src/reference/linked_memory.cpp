#include "nhc/reference.hpp"

#include <algorithm>
#include <sstream>

namespace nhc::reference {

LinkedMemory::LinkedMemory(int write_heads, int read_heads, int control_width, int data_width)
    : write_heads_(write_heads), read_heads_(read_heads), control_width_(control_width),
      data_width_(data_width), order_(write_heads),
      parents_(write_heads, std::vector<std::map<Location, Location>>(read_heads)),
      last_read_(read_heads) {}

Eigen::VectorXd LinkedMemory::control_row(Location loc) const {
  auto it = control_.find(loc);
  return it == control_.end() ? Eigen::VectorXd::Zero(control_width_) : it->second;
}

Eigen::VectorXd LinkedMemory::data_row(Location loc) const {
  auto it = data_.find(loc);
  return it == data_.end() ? Eigen::VectorXd::Zero(data_width_) : it->second;
}

void LinkedMemory::update_previous(const std::vector<bool>& gates,
                                   const std::vector<Eigen::VectorXd>& values,
                                   const std::vector<Eigen::VectorXd>& erases) {
  for (int j = 0; j < read_heads_; ++j) {
    if (!gates[j] || !last_read_[j] || !used_.count(*last_read_[j])) continue;
    const Location loc = *last_read_[j];
    Eigen::VectorXd row = control_row(loc);
    for (int k = 0; k < control_width_; ++k) row(k) = row(k) * (1.0 - erases[j](k)) + values[j](k);
    control_[loc] = row;
  }
}

void LinkedMemory::write(const std::vector<Eigen::VectorXd>& control_words,
                         const std::vector<bool>& free_write, const Eigen::VectorXd& data_word) {
  ++clock_;
  std::vector<Location> chosen;
  for (int i = 0; i < write_heads_; ++i) {
    Location loc = 0;
    while (used_.count(loc) || std::find(chosen.begin(), chosen.end(), loc) != chosen.end()) ++loc;
    chosen.push_back(loc);
  }
  for (int i = 0; i < write_heads_; ++i) {
    const Location loc = chosen[i];
    control_[loc] = control_words[i];
    data_[loc] = data_word;
    if (i == 0) first_head_last_write_ = loc;
    if (free_write[i]) continue;
    used_.insert(loc);
    order_[i].push_back(loc);
    for (int j = 0; j < read_heads_; ++j) {
      const auto& r = last_read_[j];
      if (r && used_.count(*r) && *r != loc) parents_[i][j][loc] = *r;
      else parents_[i][j].erase(loc);
    }
    written_at_[loc] = clock_;
  }
}

Location LinkedMemory::fallback() const {
  if (!used_.empty()) return *used_.begin();
  return first_head_last_write_.value_or(0);
}

Location LinkedMemory::target(int head, ReadMode mode) const {
  if (mode.kind == ReadModeKind::Halt) return last_read_[mode.head].value_or(fallback());
  if (!last_read_[head]) return fallback();
  const Location from = *last_read_[head];
  std::optional<Location> to;
  switch (mode.kind) {
    case ReadModeKind::Backward: to = predecessor(mode.head, from); break;
    case ReadModeKind::Forward: to = successor(mode.head, from); break;
    case ReadModeKind::Parent: to = parent(mode.head, head, from); break;
    case ReadModeKind::Child: {
      long newest = -1;
      for (const auto& [child, p] : parents_[mode.head][head]) {
        const long when = written_at_.at(child);
        if (p == from && when > newest) {
          newest = when;
          to = child;
        }
      }
      break;
    }
    case ReadModeKind::Halt: break;
  }
  return to.value_or(from);
}

std::vector<Location> LinkedMemory::targets(const std::vector<ReadMode>& modes) const {
  std::vector<Location> out;
  for (int j = 0; j < read_heads_; ++j) out.push_back(target(j, modes[j]));
  return out;
}

void LinkedMemory::release(Location loc) {
  if (!used_.erase(loc)) return;
  for (int i = 0; i < write_heads_; ++i) {
    order_[i].remove(loc);
    for (auto& tree : parents_[i]) {
      std::optional<Location> up;
      if (auto it = tree.find(loc); it != tree.end()) {
        up = it->second;
        tree.erase(it);
      }
      for (auto it = tree.begin(); it != tree.end();) {
        if (it->second != loc) {
          ++it;
        } else if (up) {
          it->second = *up;
          ++it;
        } else {
          it = tree.erase(it);
        }
      }
    }
  }
  written_at_.erase(loc);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> LinkedMemory::read(
    const std::vector<Location>& locations, const std::vector<bool>& free_read) {
  Eigen::VectorXd c(read_heads_ * control_width_), d(read_heads_ * data_width_);
  for (int j = 0; j < read_heads_; ++j) {
    c.segment(j * control_width_, control_width_) = control_row(locations[j]);
    d.segment(j * data_width_, data_width_) = data_row(locations[j]);
    last_read_[j] = locations[j];
  }
  for (int j = 0; j < read_heads_; ++j)
    if (free_read[j]) release(locations[j]);
  return {c, d};
}

std::optional<Location> LinkedMemory::successor(int i, Location loc) const {
  auto it = std::find(order_[i].begin(), order_[i].end(), loc);
  if (it == order_[i].end() || std::next(it) == order_[i].end()) return std::nullopt;
  return *std::next(it);
}

std::optional<Location> LinkedMemory::predecessor(int i, Location loc) const {
  auto it = std::find(order_[i].begin(), order_[i].end(), loc);
  if (it == order_[i].end() || it == order_[i].begin()) return std::nullopt;
  return *std::prev(it);
}

std::optional<Location> LinkedMemory::tail(int i) const {
  if (order_[i].empty()) return std::nullopt;
  return order_[i].back();
}

std::optional<Location> LinkedMemory::parent(int i, int j, Location loc) const {
  auto it = parents_[i][j].find(loc);
  if (it == parents_[i][j].end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> compare_memory(const MemoryState<double>& mem, const LinkedMemory& ref) {
  auto as_opt = [](Location l) { return l == kNoLocation ? std::nullopt : std::optional(l); };
  std::ostringstream why;
  for (Location loc = 0; loc < mem.size(); ++loc) {
    if (mem.used(loc) != (ref.used().count(loc) > 0)) {
      why << "usage differs at " << loc;
      return why.str();
    }
  }
  for (int i = 0; i < mem.write_heads(); ++i) {
    if (as_opt(mem.temporal_tail[i]) != ref.tail(i)) {
      why << "tail differs for write head " << i;
      return why.str();
    }
    for (Location loc : ref.used()) {
      if (as_opt(mem.temporal_link[i][loc]) != ref.successor(i, loc) ||
          as_opt(mem.temporal_pred[i][loc]) != ref.predecessor(i, loc)) {
        why << "temporal link differs at " << loc << " (write head " << i << ")";
        return why.str();
      }
      for (int j = 0; j < mem.read_heads(); ++j) {
        if (as_opt(mem.ancestry_link[i][j][loc]) != ref.parent(i, j, loc)) {
          why << "parent differs at " << loc << " (write head " << i << ", read head " << j << ")";
          return why.str();
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace nhc::reference
