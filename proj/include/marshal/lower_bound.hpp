#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "marshal/model.hpp"

namespace marshal {

/// Sorted prefix and blocking suffix of one lane.
struct LaneProfile {
  int lane = 0;
  int prefix_len = 0;
  Group threshold = 0;  // group of the prefix front, G if the prefix is empty
  std::vector<Group> blocking_suffix;
  int free_after_clear = 0;  // capacity - prefix_len
};

LaneProfile lane_profile(std::span<const Group> deep_to_front, int capacity, int groups,
                         int lane = 0);
LaneProfile lane_profile(const LaneConfiguration& config, int lane);

/// Aggregate demand for and supply of non-blocking slots, indexed by group 1..G
/// (index 0 unused).
///
/// demand[g]     blocking loads of group g
/// supply[g]     free_after_clear summed over lanes whose threshold is g
/// cum_demand[g] sum of demand over groups >= g
/// cum_supply[g] sum of supply over thresholds >= g
/// surplus[g]    cum_demand[g] - cum_supply[g]; positive entries force extra moves
struct SupplyDemandAux {
  int groups = 0;
  int blocking = 0;
  std::vector<int> demand;
  std::vector<int> supply;
  std::vector<int> cum_demand;
  std::vector<int> cum_supply;
  std::vector<int> surplus;

  bool has_surplus() const;
  friend bool operator==(const SupplyDemandAux&, const SupplyDemandAux&) = default;
};

SupplyDemandAux supply_demand(const LaneConfiguration& config);

/// Every blocking load moves at least once.
int bx_bound(const LaneConfiguration& config);

struct GxResult {
  int moves = 0;
  bool feasible = true;
  /// False only if the covering search hit its node budget; `moves` is then the
  /// largest budget proven insufficient plus one, which is still a valid bound.
  bool exact = true;
};

/// Fewest well-placed loads that must be lifted so that every blocking load
/// (and every lifted one) can find a slot whose threshold admits its group.
GxResult gx_bound(const SupplyDemandAux& aux, const LaneConfiguration& config,
                  std::uint64_t node_budget = 200000);

struct LowerBound {
  int bx = 0;
  int gx = 0;
  int h = 0;
  bool feasible = true;
  bool exact = true;
  SupplyDemandAux aux;
};

LowerBound lb(const LaneConfiguration& config);

/// Lower bound of `child = apply_move(parent, move)`, re-profiling only the two
/// lanes touched by `move` and updating the aggregates by differences.
LowerBound lb_incremental(const LowerBound& parent_bound, const LaneConfiguration& parent,
                          const LaneConfiguration& child, const Move& move);

}  // namespace marshal
