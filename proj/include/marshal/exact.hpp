#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "marshal/model.hpp"

namespace marshal {

/// Fixed-horizon relocation model: exactly `permitted_moves` stages, one
/// removal and one placement per stage, distance objective capped by an
/// optional upper bound (inclusive).
///
/// Variables, per stage k and slot (lane s, position t):
///   x  group in the slot, 0 if empty            stages 0..k
///   δ  slot occupied                            stages 0..k
///   y  load placed into the slot                stages 1..k
///   z  load removed from the slot               stages 1..k
///   w  slot holds a blocking load               stages 1..k
class StageModel {
 public:
  StageModel(LaneConfiguration initial, int permitted_moves,
             std::optional<int> distance_upper_bound);

  const LaneConfiguration& initial() const { return initial_; }
  int permitted_moves() const { return permitted_moves_; }
  std::optional<int> distance_upper_bound() const { return upper_bound_; }
  int max_group() const { return initial_.groups(); }
  /// census()[p]: loads of group p, census()[0]: empty slots.
  const std::vector<int>& census() const { return initial_.group_census(); }
  int slot_count() const { return initial_.lane_set().total_slots(); }

  struct VariableCounts {
    std::size_t x = 0, delta = 0, y = 0, z = 0, w = 0;
  };
  VariableCounts variable_counts() const;

 private:
  LaneConfiguration initial_;
  int permitted_moves_ = 0;
  std::optional<int> upper_bound_;
};

StageModel build_model(const LaneConfiguration& initial, int permitted_moves,
                       std::optional<int> distance_upper_bound);

/// A full assignment of the model variables; slots indexed by LaneSet::offset + t.
struct StageAssignment {
  std::vector<std::vector<int>> x;      // [k][slot], k = 0..K
  std::vector<std::vector<int>> delta;  // [k][slot], k = 0..K
  std::vector<std::vector<int>> y;      // [k][slot], k = 1..K (index 0 unused)
  std::vector<std::vector<int>> z;
  std::vector<std::vector<int>> w;
};

/// Encodes a plan of exactly permitted_moves moves.
StageAssignment assignment_from_plan(const StageModel& model, const std::vector<Move>& plan);

/// Labels (for example "census", "remaining-moves", "UB") of every constraint the assignment violates.
std::vector<std::string> violated_constraints(const StageModel& model, const StageAssignment& a);

/// Total loaded move distance of the assignment (sum over z * y * d).
long objective_value(const StageModel& model, const StageAssignment& a);

struct ExactOptions {
  double timeout_s = 3600.0;
  bool bound_pruning = true;         // prune by remaining-move lower bound
  bool distance_pruning = true;      // prune by admissible remaining distance
  bool transposition_table = true;   // skip dominated revisits
  bool transitive_avoidance = true;  // no removal from the lane placed into last stage
  std::size_t max_table_entries = 4'000'000;
};

struct SearchOutcome {
  enum class Status { Feasible, Infeasible, TimedOut } status = Status::Infeasible;
  std::vector<Move> moves;
  int distance = 0;
  std::uint64_t nodes = 0;
};

/// Minimizes the objective over the model's feasible set.
class SearchEngine {
 public:
  virtual ~SearchEngine() = default;
  virtual SearchOutcome minimize(const StageModel& model, const ExactOptions& options,
                                 double seconds_left) const = 0;
};

/// Depth-first branch and bound over (source, target) pairs per stage.
class DepthFirstEngine final : public SearchEngine {
 public:
  SearchOutcome minimize(const StageModel& model, const ExactOptions& options,
                         double seconds_left) const override;
};

SearchOutcome complete_search(const StageModel& model, const ExactOptions& options = {});

/// Iterative deepening on the move count from the root lower bound up to the
/// A* move count, minimizing distance at the first feasible horizon.
Solution solve_exact(const LaneConfiguration& root, const Solution& astar_solution,
                     const ExactOptions& options = {});
Solution solve_exact(const LaneConfiguration& root, const Solution& astar_solution,
                     const ExactOptions& options, const SearchEngine& engine);

}  // namespace marshal
