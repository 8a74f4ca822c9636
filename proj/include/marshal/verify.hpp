#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "marshal/access.hpp"
#include "marshal/model.hpp"

namespace marshal {

struct ValidationReport {
  std::vector<std::string> violations;
  int claimed_k = 0;
  int claimed_distance = 0;
  int replayed_k = 0;
  int replayed_distance = 0;
  int final_blocking = 0;

  bool valid() const { return violations.empty(); }
};

/// Re-applies the plan on lanes rebuilt from the instance. `access_points`, if
/// given, holds the claimed (from, to) access point of every move (0-based).
ValidationReport replay(const WarehouseInstance& instance,
                        const std::vector<AccessAssignment>& assignments,
                        const Solution& solution, bool lane_depth = false,
                        const std::vector<std::pair<int, int>>* access_points = nullptr);

/// Same checks directly on lanes; distances come from the lane table.
ValidationReport replay(const LaneConfiguration& initial, const Solution& solution);

class NoSolutionWithin : public std::runtime_error {
 public:
  explicit NoSolutionWithin(int max_k);
  int max_k;
};

struct BruteForceResult {
  int k = 0;
  int distance = 0;
  std::vector<Move> moves;
  std::uint64_t nodes = 0;
};

/// Plain iterative deepening over every legal move sequence. Throws
/// NoSolutionWithin if nothing of length <= max_k sorts the lanes.
BruteForceResult brute_force_optimum(const LaneConfiguration& initial, int max_k);

}  // namespace marshal
