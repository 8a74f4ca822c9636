#include "marshal/astar.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <queue>
#include <string_view>
#include <unordered_map>

namespace marshal {

bool PopsLater::operator()(const OpenEntry& a, const OpenEntry& b) const {
  if (a.f != b.f) return a.f > b.f;
  if (a.h != b.h) return a.h > b.h;
  if (a.dist != b.dist) return a.dist > b.dist;
  return a.sequence > b.sequence;
}

bool admits(bool seen, int stored_f, int stored_dist, int f, int dist) {
  return !seen || stored_f > f || (stored_f == f && stored_dist > dist);
}

namespace {

using Clock = std::chrono::steady_clock;

std::string_view key_view(const LaneConfiguration& c) {
  const auto& s = c.slots();
  return {reinterpret_cast<const char*>(s.data()), s.size()};
}

// f_lookup, distance_lookup and the closed set share one table keyed by state.
struct Record {
  int f = 0;
  int dist = 0;
  int h = 0;
  bool closed = false;
};

}  // namespace

Solution solve_astar(const LaneConfiguration& root, const AstarOptions& options) {
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  Solution result;
  SolveStats& stats = result.stats;

  std::deque<SearchNode> nodes;
  std::unordered_map<std::string_view, Record> lookup;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, PopsLater> open;
  std::uint64_t sequence = 0;

  auto push = [&](SearchNode&& node) {
    node.sequence = sequence++;
    nodes.push_back(std::move(node));
    const SearchNode& stored = nodes.back();
    open.push({stored.f, stored.h, stored.dist, stored.sequence, nodes.size() - 1});
    Record& rec = lookup[key_view(stored.config)];
    rec.f = stored.f;
    rec.dist = stored.dist;
    rec.h = stored.h;
  };

  {
    SearchNode r;
    r.config = root;
    r.bound = lb(root);
    r.h = r.bound.h;
    r.f = r.h;
    stats.root_lower_bound = r.h;
    if (!r.bound.feasible) {
      result.status = SolveStatus::Infeasible;
      stats.wall_time_s = elapsed();
      return result;
    }
    push(std::move(r));
  }

  std::uint64_t iterations = 0;
  while (!open.empty()) {
    if ((++iterations & 63u) == 0 && elapsed() >= options.timeout_s) {
      result.status = SolveStatus::TimedOut;
      stats.wall_time_s = elapsed();
      return result;
    }
    if (options.max_nodes != 0 && stats.nodes_evaluated >= options.max_nodes) {
      result.status = SolveStatus::TimedOut;
      stats.wall_time_s = elapsed();
      return result;
    }
    const OpenEntry top = open.top();
    open.pop();
    SearchNode& node = nodes[top.node];
    Record& rec = lookup.find(key_view(node.config))->second;
    // A cheaper copy of this state was admitted later and has already been expanded.
    if (rec.closed) continue;
    rec.closed = true;
    ++stats.nodes_evaluated;

    if (node.bound.bx == 0) {
      std::vector<Move> path;
      for (std::int64_t at = static_cast<std::int64_t>(top.node); nodes[at].parent >= 0;
           at = nodes[at].parent)
        path.push_back(nodes[at].move);
      std::reverse(path.begin(), path.end());
      SolveStats s = stats;
      s.optimal_moves = true;
      s.final_depth = static_cast<int>(path.size());
      result = make_solution(std::move(path), s);
      result.stats.wall_time_s = elapsed();
      return result;
    }

    const std::size_t parent_index = top.node;
    for (const Move& m : legal_moves(node.config)) {
      // `node` may dangle after push(); re-fetch through the stable deque index.
      const SearchNode& parent = nodes[parent_index];
      LaneConfiguration child = apply_move(parent.config, m);
      const int g = parent.g + 1;
      const int dist = parent.dist + m.distance;
      auto it = lookup.find(key_view(child));
      const bool seen = it != lookup.end();
      if (seen && it->second.closed) continue;
      if (seen && !admits(true, it->second.f, it->second.dist, g + it->second.h, dist)) continue;

      SearchNode next;
      next.bound = lb_incremental(parent.bound, parent.config, child, m);
      if (!next.bound.feasible) continue;
      next.config = std::move(child);
      next.g = g;
      next.h = next.bound.h;
      next.f = g + next.h;
      next.dist = dist;
      next.parent = static_cast<std::int64_t>(parent_index);
      next.move = m;
      if (!admits(seen, seen ? it->second.f : 0, seen ? it->second.dist : 0, next.f, dist))
        continue;
      push(std::move(next));
    }
    // Only the open frontier needs supply/demand data.
    nodes[parent_index].bound.aux = SupplyDemandAux{};
  }

  result.status = SolveStatus::Infeasible;
  stats.wall_time_s = elapsed();
  return result;
}

}  // namespace marshal
