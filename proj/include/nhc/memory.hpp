#pragma once

// Coupled control/data memory with hard-attention heads.
//
// Both matrices are always addressed at the same row. Write locations come
// from a free list (lowest unused index first); read locations come from the
// read modes, which follow the per-write-head temporal chain (write order)
// or the per-(write head, read head) ancestry tree (which location was read
// right before a location was written).

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhc {

using Location = std::int64_t;
inline constexpr Location kNoLocation = -1;

struct MemoryFull : std::runtime_error {
  MemoryFull() : std::runtime_error("memory full: no unused location left") {}
};

enum class ReadModeKind { Halt, Backward, Forward, Parent, Child };

struct ReadMode {
  ReadModeKind kind = ReadModeKind::Halt;
  /// Read head index for Halt, write head index for the linkage modes.
  int head = 0;
};

/// Number of read modes available to each read head.
inline int read_mode_count(int read_heads, int write_heads, bool ancestry) {
  return read_heads + (ancestry ? 4 : 2) * write_heads;
}

/// Layout per read head: [H_1..H_hr, then per write head B,F(,P,C)].
inline ReadMode decode_read_mode(int index, int read_heads, int write_heads, bool ancestry) {
  if (index < 0 || index >= read_mode_count(read_heads, write_heads, ancestry))
    throw std::out_of_range("read mode index out of range");
  if (index < read_heads) return {ReadModeKind::Halt, index};
  const int per_head = ancestry ? 4 : 2;
  const int rel = index - read_heads;
  static constexpr ReadModeKind kinds[] = {ReadModeKind::Backward, ReadModeKind::Forward,
                                           ReadModeKind::Parent, ReadModeKind::Child};
  return {kinds[rel % per_head], rel / per_head};
}

inline const char* read_mode_name(ReadModeKind kind) {
  switch (kind) {
    case ReadModeKind::Halt: return "H";
    case ReadModeKind::Backward: return "B";
    case ReadModeKind::Forward: return "F";
    case ReadModeKind::Parent: return "P";
    case ReadModeKind::Child: return "C";
  }
  return "?";
}

template <typename Scalar>
struct MemoryState {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Links = std::vector<Location>;

  Matrix control;  // N x C
  Matrix data;     // N x D
  std::vector<std::uint8_t> usage;
  std::vector<Links> temporal_link;               // [write head][loc] -> successor
  std::vector<Links> temporal_pred;               // [write head][loc] -> predecessor
  std::vector<Location> temporal_tail;            // newest linked location per write head
  std::vector<std::vector<Links>> ancestry_link;  // [write head][read head][loc] -> parent
  std::vector<std::int64_t> history;              // step of last write, -1 if none
  std::vector<Location> prev_read;
  std::vector<Location> prev_write;
  std::int64_t step = 0;

  MemoryState() = default;
  MemoryState(Location locations, int control_width, int data_width, int write_heads,
              int read_heads)
      : control(Matrix::Zero(locations, control_width)),
        data(Matrix::Zero(locations, data_width)),
        usage(static_cast<std::size_t>(locations), 0),
        temporal_link(write_heads, Links(locations, kNoLocation)),
        temporal_pred(write_heads, Links(locations, kNoLocation)),
        temporal_tail(write_heads, kNoLocation),
        ancestry_link(write_heads, std::vector<Links>(read_heads, Links(locations, kNoLocation))),
        history(static_cast<std::size_t>(locations), -1),
        prev_read(read_heads, kNoLocation),
        prev_write(write_heads, kNoLocation) {}

  Location size() const { return static_cast<Location>(usage.size()); }
  int write_heads() const { return static_cast<int>(temporal_link.size()); }
  int read_heads() const { return static_cast<int>(prev_read.size()); }
  bool used(Location loc) const { return loc >= 0 && loc < size() && usage[loc] != 0; }
};

/// Lowest-indexed unused location.
inline Location allocate_write_location(const std::vector<std::uint8_t>& usage) {
  for (std::size_t k = 0; k < usage.size(); ++k)
    if (usage[k] == 0) return static_cast<Location>(k);
  throw MemoryFull();
}

/// Removes `loc` from all linkages: the temporal chain is spliced and the
/// ancestry children are attached to the parent of `loc`.
template <typename Scalar>
void free_location(MemoryState<Scalar>& mem, Location loc) {
  if (!mem.used(loc)) return;
  mem.usage[loc] = 0;
  for (int i = 0; i < mem.write_heads(); ++i) {
    auto& next = mem.temporal_link[i];
    auto& prev = mem.temporal_pred[i];
    const Location p = prev[loc];
    const Location s = next[loc];
    if (p != kNoLocation) next[p] = s;
    if (s != kNoLocation) prev[s] = p;
    if (mem.temporal_tail[i] == loc) mem.temporal_tail[i] = p;
    next[loc] = kNoLocation;
    prev[loc] = kNoLocation;
    for (auto& parents : mem.ancestry_link[i]) {
      const Location parent = parents[loc];
      for (auto& entry : parents)
        if (entry == loc) entry = parent;
      parents[loc] = kNoLocation;
    }
  }
  mem.history[loc] = -1;
}

/// Updates the rows read in the previous step: row <- row o (1 - erase) + value.
/// Skipped for closed gates and for rows that are no longer in use.
template <typename Scalar>
void update_previous(MemoryState<Scalar>& mem, const std::vector<std::uint8_t>& gates,
                     const std::vector<typename MemoryState<Scalar>::Vector>& values,
                     const std::vector<typename MemoryState<Scalar>::Vector>& erases) {
  for (int j = 0; j < mem.read_heads(); ++j) {
    const Location loc = mem.prev_read[j];
    if (!gates[j] || !mem.used(loc)) continue;
    auto row = mem.control.row(loc);
    row = (row.array() * (Scalar(1) - erases[j].transpose().array())).matrix() +
          values[j].transpose();
  }
}

/// Writes one control word per write head and the shared data word at freshly
/// allocated locations. A set free-write flag leaves the location unused and
/// unlinked so the next allocation reuses it.
template <typename Scalar>
void write_step(MemoryState<Scalar>& mem,
                const std::vector<typename MemoryState<Scalar>::Vector>& write_vectors,
                const std::vector<std::uint8_t>& free_write,
                const typename MemoryState<Scalar>::Vector& data_word) {
  ++mem.step;
  const int heads = mem.write_heads();
  std::vector<Location> targets(heads);
  {
    auto reserved = mem.usage;
    for (int i = 0; i < heads; ++i) {
      targets[i] = allocate_write_location(reserved);
      reserved[targets[i]] = 1;
    }
  }
  for (int i = 0; i < heads; ++i) {
    const Location w = targets[i];
    mem.control.row(w) = write_vectors[i].transpose();
    mem.data.row(w) = data_word.transpose();
    mem.prev_write[i] = w;
    if (free_write[i]) continue;
    mem.usage[w] = 1;
    if (mem.temporal_tail[i] != kNoLocation) {
      mem.temporal_link[i][mem.temporal_tail[i]] = w;
      mem.temporal_pred[i][w] = mem.temporal_tail[i];
    }
    mem.temporal_tail[i] = w;
    for (int j = 0; j < mem.read_heads(); ++j) {
      const Location parent = mem.prev_read[j];
      mem.ancestry_link[i][j][w] = (mem.used(parent) && parent != w) ? parent : kNoLocation;
    }
    mem.history[w] = mem.step;
  }
}

/// Location used when a head has no previous position to move from.
template <typename Scalar>
Location default_read_location(const MemoryState<Scalar>& mem) {
  for (Location k = 0; k < mem.size(); ++k)
    if (mem.usage[k]) return k;
  if (!mem.prev_write.empty() && mem.prev_write[0] != kNoLocation) return mem.prev_write[0];
  return 0;
}

/// Resolves the next location of read head `head`. Undefined links keep the
/// head at its previous location.
template <typename Scalar>
Location resolve_read(const MemoryState<Scalar>& mem, int head, ReadMode mode) {
  if (mode.kind == ReadModeKind::Halt) {
    const Location target = mem.prev_read[mode.head];
    return target == kNoLocation ? default_read_location(mem) : target;
  }
  const Location prev = mem.prev_read[head];
  if (prev == kNoLocation) return default_read_location(mem);
  Location next = kNoLocation;
  switch (mode.kind) {
    case ReadModeKind::Backward: next = mem.temporal_pred[mode.head][prev]; break;
    case ReadModeKind::Forward: next = mem.temporal_link[mode.head][prev]; break;
    case ReadModeKind::Parent: next = mem.ancestry_link[mode.head][head][prev]; break;
    case ReadModeKind::Child: {
      const auto& parents = mem.ancestry_link[mode.head][head];
      std::int64_t newest = -1;
      for (Location k = 0; k < mem.size(); ++k) {
        if (parents[k] == prev && mem.history[k] > newest) {
          newest = mem.history[k];
          next = k;
        }
      }
      break;
    }
    case ReadModeKind::Halt: break;
  }
  return next == kNoLocation ? prev : next;
}

template <typename Scalar>
struct Readout {
  typename MemoryState<Scalar>::Vector control;  // h_r * C, head-wise concatenation
  typename MemoryState<Scalar>::Vector data;     // h_r * D
};

/// Reads rows at `locations`, records them as the previous read positions and
/// then frees the locations whose free-read flag is set.
template <typename Scalar>
Readout<Scalar> read_step(MemoryState<Scalar>& mem, const std::vector<Location>& locations,
                          const std::vector<std::uint8_t>& free_read) {
  const Eigen::Index c = mem.control.cols();
  const Eigen::Index d = mem.data.cols();
  const int heads = mem.read_heads();
  Readout<Scalar> out{typename MemoryState<Scalar>::Vector(heads * c),
                      typename MemoryState<Scalar>::Vector(heads * d)};
  for (int j = 0; j < heads; ++j) {
    out.control.segment(j * c, c) = mem.control.row(locations[j]).transpose();
    out.data.segment(j * d, d) = mem.data.row(locations[j]).transpose();
    mem.prev_read[j] = locations[j];
  }
  for (int j = 0; j < heads; ++j)
    if (free_read[j]) free_location(mem, locations[j]);
  return out;
}

}  // namespace nhc
