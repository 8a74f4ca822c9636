#pragma once

#include <cstdint>
#include <vector>

#include "marshal/lower_bound.hpp"
#include "marshal/model.hpp"

namespace marshal {

struct AstarOptions {
  double timeout_s = 600.0;
  std::uint64_t max_nodes = 0;  // 0 = unlimited; reaching it reports TimedOut
};

/// Search node: g moves from the root, lower bound h, loaded distance so far.
struct SearchNode {
  LaneConfiguration config;
  LowerBound bound;
  int g = 0;
  int h = 0;
  int f = 0;
  int dist = 0;
  std::int64_t parent = -1;
  Move move;
  std::uint64_t sequence = 0;  // insertion order, last tie-breaker
};

/// Priority of a node in the open list: smaller (f, h, dist, sequence) first.
struct OpenEntry {
  int f = 0;
  int h = 0;
  int dist = 0;
  std::uint64_t sequence = 0;
  std::size_t node = 0;
};

/// Strict-weak "pops later" ordering for std::priority_queue.
struct PopsLater {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const;
};

/// Admission rule for a regenerated state: accept if unseen, or if it improves
/// on the recorded f, or ties f with strictly less distance.
bool admits(bool seen, int stored_f, int stored_dist, int f, int dist);

/// f_h_dist best-first search. k is minimal; distance is the tie-broken value.
Solution solve_astar(const LaneConfiguration& root, const AstarOptions& options = {});

}  // namespace marshal
