#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace marshal {

/// Retrieval priority group. Stored loads carry 1..G; 0 marks an empty slot.
using Group = std::uint8_t;
inline constexpr Group kEmpty = 0;

enum class Side : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr Side kAllSides[] = {Side::North, Side::East, Side::South, Side::West};

char side_letter(Side side);
Side side_from_letter(char c);

/// Subset of {N, E, S, W}.
class SideSet {
 public:
  constexpr SideSet() = default;
  constexpr explicit SideSet(std::uint8_t mask) : mask_(mask & 0x0F) {}
  static constexpr SideSet all() { return SideSet(0x0F); }

  constexpr bool has(Side s) const { return (mask_ >> static_cast<int>(s)) & 1u; }
  constexpr void add(Side s) { mask_ |= static_cast<std::uint8_t>(1u << static_cast<int>(s)); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint8_t mask() const { return mask_; }
  friend constexpr bool operator==(SideSet, SideSet) = default;

  /// "NESW"-style letters in canonical order.
  std::string letters() const;
  static SideSet parse(const std::string& letters);

 private:
  std::uint8_t mask_ = 0;
};

class IllegalMove : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Position of a stack inside a bay, 0-based: i is the column (x), j the row (y).
struct StackPos {
  int i = 0;
  int j = 0;
  friend bool operator==(const StackPos&, const StackPos&) = default;
};

/// One rectangular bay of I x J stacks with T tiers. North is the j = 0 side,
/// West the i = 0 side.
struct BaySpec {
  int columns = 0;  // I
  int rows = 0;     // J
  int tiers = 1;    // T
  int groups = 0;   // G
  std::vector<Group> occupancy;  // (t * rows + j) * columns + i
  SideSet access_sides = SideSet::all();

  BaySpec() = default;
  BaySpec(int columns, int rows, int groups, SideSet sides = SideSet::all(), int tiers = 1);

  int slot_count() const { return columns * rows * tiers; }
  Group at(int i, int j, int t = 0) const { return occupancy[index(i, j, t)]; }
  void set(int i, int j, Group g, int t = 0) { occupancy[index(i, j, t)] = g; }
  int load_count() const;

  /// Stacks on an allowed boundary side, ordered by side (N, E, S, W) then along the side.
  std::vector<std::pair<Side, StackPos>> access_stacks() const;

  void validate() const;

 private:
  std::size_t index(int i, int j, int t) const {
    return static_cast<std::size_t>((t * rows + j) * columns + i);
  }
};

struct InstanceMeta {
  std::uint64_t seed = 0;
  double fill = 0.0;
  int classes = 0;
  std::string bay_layout;
  std::string warehouse_layout;
  std::string generator;
};

struct WarehouseInstance {
  std::vector<BaySpec> bays;  // row-major over the bay grid
  int warehouse_rows = 1;
  int warehouse_cols = 1;
  InstanceMeta meta;

  int groups() const { return bays.empty() ? 0 : bays.front().groups; }
  int slot_count() const;
  int load_count() const;
  void validate() const;
};

/// Static description of one virtual lane. Cells run deepest-first; the last
/// cell adjoins the access point.
struct LaneSpec {
  int bay = 0;
  Side side = Side::West;
  int access_point = 0;
  std::vector<StackPos> cells;
  int capacity() const { return static_cast<int>(cells.size()); }
};

/// Everything about the lanes that never changes during search: geometry,
/// access-point binding and the lane-to-lane distance table.
class LaneSet {
 public:
  LaneSet() = default;
  LaneSet(std::vector<LaneSpec> lanes, int groups, std::vector<int> lane_distances,
          bool lane_depth = false);

  /// Lanes with all pairwise distances zero; used when only contents matter.
  static std::shared_ptr<const LaneSet> without_distances(std::vector<LaneSpec> lanes,
                                                          int groups);
  /// Bare lanes of the given capacities, no geometry.
  static std::shared_ptr<const LaneSet> from_capacities(const std::vector<int>& capacities,
                                                        int groups,
                                                        std::vector<int> lane_distances = {});

  int lane_count() const { return static_cast<int>(lanes_.size()); }
  int groups() const { return groups_; }
  const LaneSpec& lane(int s) const { return lanes_[s]; }
  const std::vector<LaneSpec>& lanes() const { return lanes_; }
  int capacity(int s) const { return capacities_[s]; }
  int offset(int s) const { return offsets_[s]; }
  int total_slots() const { return total_slots_; }
  int max_capacity() const { return max_capacity_; }
  int distance(int s, int t) const {
    return distances_[static_cast<std::size_t>(s) * lanes_.size() + t];
  }
  const std::vector<int>& distance_table() const { return distances_; }
  /// Adds in-lane travel over empty tiles to move distances.
  bool lane_depth() const { return lane_depth_; }

 private:
  std::vector<LaneSpec> lanes_;
  std::vector<int> capacities_;
  std::vector<int> offsets_;
  std::vector<int> distances_;
  int groups_ = 0;
  int total_slots_ = 0;
  int max_capacity_ = 0;
  bool lane_depth_ = false;
};

/// A relocation of the front load of one lane onto the first free slot of another.
/// Positions are 0-based, 0 = deepest.
struct Move {
  int from_lane = 0;
  int to_lane = 0;
  int from_pos = 0;
  int to_pos = 0;
  int distance = 0;
  friend bool operator==(const Move&, const Move&) = default;
};

using StateKey = std::string;

/// Contents of every virtual lane. Immutable value; successors are produced by apply_move.
class LaneConfiguration {
 public:
  LaneConfiguration() = default;
  LaneConfiguration(std::shared_ptr<const LaneSet> lanes,
                    const std::vector<std::vector<Group>>& contents);

  const LaneSet& lane_set() const { return *lanes_; }
  const std::shared_ptr<const LaneSet>& lane_set_ptr() const { return lanes_; }
  int lane_count() const { return lanes_->lane_count(); }
  int groups() const { return lanes_->groups(); }

  std::span<const Group> contents(int s) const {
    return {slots_.data() + lanes_->offset(s), static_cast<std::size_t>(sizes_[s])};
  }
  int size(int s) const { return sizes_[s]; }
  int capacity(int s) const { return lanes_->capacity(s); }
  bool is_empty(int s) const { return sizes_[s] == 0; }
  bool is_full(int s) const { return sizes_[s] == lanes_->capacity(s); }
  Group front(int s) const { return slots_[lanes_->offset(s) + sizes_[s] - 1]; }

  int blocking_total() const { return blocking_total_; }
  /// census[g] = number of loads of group g; census[0] = empty slots.
  const std::vector<int>& group_census() const { return census_; }
  int load_count() const;

  /// Flat slot vector (0 = empty); doubles as the canonical state key.
  const std::vector<Group>& slots() const { return slots_; }

  std::vector<std::vector<Group>> to_vectors() const;

 private:
  friend LaneConfiguration apply_move(const LaneConfiguration&, const Move&);

  std::shared_ptr<const LaneSet> lanes_;
  std::vector<Group> slots_;
  std::vector<std::uint16_t> sizes_;
  std::vector<int> census_;
  int blocking_total_ = 0;
};

/// Loads outside the longest non-increasing prefix counted from the deepest position.
int blocking_count(std::span<const Group> deep_to_front);

/// Length of the longest non-increasing prefix counted from the deepest position.
int sorted_prefix_length(std::span<const Group> deep_to_front);

int state_blocking(const LaneConfiguration& config);

/// Loaded travel for moving the front load of `from` onto lane `to`.
int move_distance(const LaneConfiguration& config, int from, int to);

/// All relocations, ordered by (source lane, target lane).
std::vector<Move> legal_moves(const LaneConfiguration& config);

bool is_legal(const LaneConfiguration& config, const Move& move);

/// Throws IllegalMove when `move` is not in legal_moves(config).
LaneConfiguration apply_move(const LaneConfiguration& config, const Move& move);

StateKey state_key(const LaneConfiguration& config);

/// Move count, total loaded distance and search statistics of a plan.
struct SolveStats {
  std::uint64_t nodes_evaluated = 0;
  double wall_time_s = 0.0;
  double preprocessing_s = 0.0;
  bool optimal_moves = false;
  bool optimal_distance = false;
  int root_lower_bound = 0;
  int final_depth = 0;  // deepest k examined by iterative deepening
};

enum class SolveStatus { Solved, TimedOut, Infeasible };

const char* status_name(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Move> moves;
  int k = 0;
  int total_distance = 0;
  SolveStats stats;

  bool solved() const { return status == SolveStatus::Solved; }
};

/// Builds a solved Solution from a move list, filling k and total_distance.
Solution make_solution(std::vector<Move> moves, SolveStats stats);

}  // namespace marshal
