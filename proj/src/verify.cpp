#include "marshal/verify.hpp"

#include <sstream>
#include <string_view>
#include <unordered_map>

#include "marshal/layout.hpp"

namespace marshal {

namespace {

std::string describe(int index, const char* what) {
  std::ostringstream os;
  os << "move " << index + 1 << ": " << what;
  return os.str();
}

template <class DistanceFn>
ValidationReport replay_lanes(LaneConfiguration config, const Solution& solution,
                              DistanceFn recompute,
                              const std::vector<std::pair<int, int>>* access_points) {
  ValidationReport r;
  r.claimed_k = solution.k;
  r.claimed_distance = solution.total_distance;
  const int lanes = config.lane_count();
  if (access_points && access_points->size() != solution.moves.size())
    r.violations.push_back("access point list length differs from move count");
  for (std::size_t n = 0; n < solution.moves.size(); ++n) {
    const Move& claimed = solution.moves[n];
    const int idx = static_cast<int>(n);
    if (claimed.from_lane < 0 || claimed.from_lane >= lanes || claimed.to_lane < 0 ||
        claimed.to_lane >= lanes) {
      r.violations.push_back(describe(idx, "lane index out of range"));
      break;
    }
    if (claimed.from_lane == claimed.to_lane || config.is_empty(claimed.from_lane) ||
        config.is_full(claimed.to_lane)) {
      r.violations.push_back(describe(idx, "illegal move"));
      break;
    }
    Move m;
    m.from_lane = claimed.from_lane;
    m.to_lane = claimed.to_lane;
    m.from_pos = config.size(m.from_lane) - 1;
    m.to_pos = config.size(m.to_lane);
    m.distance = recompute(config, m.from_lane, m.to_lane);
    if (m.distance != claimed.distance) r.violations.push_back(describe(idx, "distance mismatch"));
    if (access_points && n < access_points->size()) {
      const auto& ls = config.lane_set();
      const auto [fa, ta] = (*access_points)[n];
      if (fa != ls.lane(m.from_lane).access_point || ta != ls.lane(m.to_lane).access_point)
        r.violations.push_back(describe(idx, "access point mismatch"));
    }
    config = apply_move(config, m);
    ++r.replayed_k;
    r.replayed_distance += m.distance;
  }
  r.final_blocking = config.blocking_total();
  if (r.final_blocking != 0) r.violations.push_back("final configuration still has blocking loads");
  if (r.replayed_k != r.claimed_k) r.violations.push_back("move count mismatch");
  if (r.replayed_distance != r.claimed_distance)
    r.violations.push_back("total distance mismatch");
  return r;
}

}  // namespace

ValidationReport replay(const WarehouseInstance& instance,
                        const std::vector<AccessAssignment>& assignments,
                        const Solution& solution, bool lane_depth,
                        const std::vector<std::pair<int, int>>* access_points) {
  ValidationReport r;
  r.claimed_k = solution.k;
  r.claimed_distance = solution.total_distance;
  GridLayout layout;
  DistanceMatrix dist;
  LaneConfiguration lanes;
  try {
    for (std::size_t b = 0; b < instance.bays.size() && b < assignments.size(); ++b)
      if (!is_hole_free(instance.bays[b], assignments[b]))
        r.violations.push_back("assignment of bay " + std::to_string(b + 1) + " has holes");
    layout = build_layout(instance);
    dist = all_pairs_distances(layout);
    lanes = to_virtual_lanes(instance, assignments, layout, dist, lane_depth);
  } catch (const std::exception& e) {
    r.violations.push_back(std::string("cannot rebuild lanes: ") + e.what());
    return r;
  }
  auto recompute = [&](const LaneConfiguration& c, int from, int to) {
    const auto& ls = c.lane_set();
    int d = dist(ls.lane(from).access_point, ls.lane(to).access_point);
    if (lane_depth) d += (c.capacity(from) - c.size(from)) + (c.capacity(to) - c.size(to) - 1);
    return d;
  };
  ValidationReport lanes_report = replay_lanes(lanes, solution, recompute, access_points);
  lanes_report.violations.insert(lanes_report.violations.begin(), r.violations.begin(),
                                 r.violations.end());
  return lanes_report;
}

ValidationReport replay(const LaneConfiguration& initial, const Solution& solution) {
  auto recompute = [](const LaneConfiguration& c, int from, int to) {
    const auto& ls = c.lane_set();
    int d = ls.distance(from, to);
    if (ls.lane_depth())
      d += (c.capacity(from) - c.size(from)) + (c.capacity(to) - c.size(to) - 1);
    return d;
  };
  return replay_lanes(initial, solution, recompute, nullptr);
}

NoSolutionWithin::NoSolutionWithin(int k)
    : std::runtime_error("no solution within " + std::to_string(k) + " moves"), max_k(k) {}

namespace {

class Enumerator {
 public:
  explicit Enumerator(int depth) : depth_(depth) {}

  void run(const LaneConfiguration& c, int g, int dist) {
    ++nodes_;
    if (g == depth_) {
      if (c.blocking_total() == 0 && (!found_ || dist < best_distance_)) {
        found_ = true;
        best_distance_ = dist;
        best_ = path_;
      }
      return;
    }
    // Anything sorted earlier was found by a shallower iteration.
    if (c.blocking_total() == 0) return;
    if (dominated(c, g, dist)) return;
    for (const Move& m : legal_moves(c)) {
      path_.push_back(m);
      run(apply_move(c, m), g + 1, dist + m.distance);
      path_.pop_back();
    }
  }

  bool found() const { return found_; }
  int best_distance() const { return best_distance_; }
  const std::vector<Move>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool dominated(const LaneConfiguration& c, int g, int dist) {
    auto& seen = visits_[std::string(reinterpret_cast<const char*>(c.slots().data()),
                                     c.slots().size())];
    for (const auto& [g0, d0] : seen)
      if (g0 <= g && d0 <= dist) return true;
    std::erase_if(seen, [&](const std::pair<int, int>& v) { return g <= v.first && dist <= v.second; });
    seen.emplace_back(g, dist);
    return false;
  }

  int depth_;
  bool found_ = false;
  int best_distance_ = 0;
  std::vector<Move> best_;
  std::vector<Move> path_;
  std::unordered_map<std::string, std::vector<std::pair<int, int>>> visits_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

BruteForceResult brute_force_optimum(const LaneConfiguration& initial, int max_k) {
  BruteForceResult result;
  for (int depth = 0; depth <= max_k; ++depth) {
    Enumerator e(depth);
    e.run(initial, 0, 0);
    result.nodes += e.nodes();
    if (e.found()) {
      result.k = depth;
      result.distance = e.best_distance();
      result.moves = e.best();
      return result;
    }
  }
  throw NoSolutionWithin(max_k);
}

}  // namespace marshal
