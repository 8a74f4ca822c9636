#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "marshal/layout.hpp"
#include "marshal/model.hpp"

namespace marshal {

class InfeasibleAssignment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximal same-direction run anchored at a boundary; cells deepest-first.
struct LaneSegment {
  Side side = Side::West;
  std::vector<StackPos> cells;
  StackPos access_stack() const { return cells.back(); }
};

/// One access direction per stack of a bay, with the lanes it induces.
struct AccessAssignment {
  int columns = 0;
  int rows = 0;
  std::vector<Side> directions;  // j * columns + i
  std::vector<LaneSegment> lanes;
  int misplaced = 0;

  Side at(int i, int j) const { return directions[static_cast<std::size_t>(j) * columns + i]; }
  /// One string per row, e.g. {"WWN", "WNN", ...}.
  std::vector<std::string> rows_as_strings() const;
  friend bool operator==(const AccessAssignment& a, const AccessAssignment& b) {
    return a.columns == b.columns && a.rows == b.rows && a.directions == b.directions;
  }
};

/// Splits a direction grid into boundary-anchored lanes. Throws
/// std::invalid_argument if a direction is not allowed, runs are not anchored
/// at their boundary, or a lane has an empty slot deeper than a load.
std::vector<LaneSegment> induce_lanes(const BaySpec& bay, const std::vector<Side>& directions);

AccessAssignment make_assignment(const BaySpec& bay, std::vector<Side> directions);

/// Occupied cells of every lane form a prefix from its deep end.
bool is_hole_free(const BaySpec& bay, const AccessAssignment& assignment);

int misplaced_count(const BaySpec& bay, const AccessAssignment& assignment);

/// Solver behind optimal_assignments; replaceable by a flow or ILP model.
class AssignmentBackend {
 public:
  virtual ~AssignmentBackend() = default;
  virtual std::vector<AccessAssignment> solve(const BaySpec& bay, int limit) const = 0;
};

/// Exact dynamic program over columns whose state is the phase of every row
/// (still west-accessed, handed to columns, east-accessed). Transposes the bay
/// when it has more rows than columns.
class SplitDpBackend final : public AssignmentBackend {
 public:
  std::vector<AccessAssignment> solve(const BaySpec& bay, int limit) const override;
};

/// Up to `limit` hole-free assignments of minimum misplaced count, in
/// deterministic enumeration order. Throws InfeasibleAssignment.
std::vector<AccessAssignment> optimal_assignments(const BaySpec& bay, int limit = 10);
std::vector<AccessAssignment> optimal_assignments(const BaySpec& bay, int limit,
                                                  const AssignmentBackend& backend);

/// Full lower bound of the bay on its own under `assignment`.
int assignment_lower_bound(const BaySpec& bay, const AccessAssignment& assignment);

/// Candidate with the smallest lower bound; the earliest wins ties.
const AccessAssignment& select_assignment(const std::vector<AccessAssignment>& candidates,
                                          const BaySpec& bay);

/// Steps above for every bay; bays are solved concurrently when jobs > 1.
std::vector<AccessAssignment> fix_access_directions(const WarehouseInstance& instance,
                                                    int limit = 10, int jobs = 1);

/// Lanes of all bays in bay order, bound to their access points.
LaneConfiguration to_virtual_lanes(const WarehouseInstance& instance,
                                   const std::vector<AccessAssignment>& assignments,
                                   const GridLayout& layout, const DistanceMatrix& distances,
                                   bool lane_depth = false);

/// Inverse of to_virtual_lanes for the occupancy grids.
std::vector<BaySpec> occupancy_from_lanes(const WarehouseInstance& instance,
                                          const LaneConfiguration& config);

}  // namespace marshal
