#include "marshal/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "marshal/lower_bound.hpp"

namespace marshal {

StageModel::StageModel(LaneConfiguration initial, int permitted_moves,
                       std::optional<int> distance_upper_bound)
    : initial_(std::move(initial)),
      permitted_moves_(permitted_moves),
      upper_bound_(distance_upper_bound) {
  if (permitted_moves < 0) throw std::invalid_argument("negative move count");
}

StageModel::VariableCounts StageModel::variable_counts() const {
  const auto n = static_cast<std::size_t>(slot_count());
  const auto k = static_cast<std::size_t>(permitted_moves_);
  VariableCounts c;
  c.x = n * (k + 1);
  c.delta = n * (k + 1);
  c.y = n * k;
  c.z = n * k;
  c.w = n * k;
  return c;
}

StageModel build_model(const LaneConfiguration& initial, int permitted_moves,
                       std::optional<int> distance_upper_bound) {
  return StageModel(initial, permitted_moves, distance_upper_bound);
}

namespace {

int slot_distance(const LaneSet& ls, int s, int t, int s2, int t2) {
  int d = ls.distance(s, s2);
  if (ls.lane_depth()) d += (ls.capacity(s) - 1 - t) + (ls.capacity(s2) - 1 - t2);
  return d;
}

std::vector<int> blocking_flags(const LaneConfiguration& c) {
  const LaneSet& ls = c.lane_set();
  std::vector<int> w(static_cast<std::size_t>(ls.total_slots()), 0);
  for (int s = 0; s < ls.lane_count(); ++s) {
    const int prefix = sorted_prefix_length(c.contents(s));
    for (int t = prefix; t < c.size(s); ++t) w[ls.offset(s) + t] = 1;
  }
  return w;
}

}  // namespace

StageAssignment assignment_from_plan(const StageModel& model, const std::vector<Move>& plan) {
  if (static_cast<int>(plan.size()) != model.permitted_moves())
    throw std::invalid_argument("plan length differs from the model horizon");
  const int n = model.slot_count();
  const int K = model.permitted_moves();
  const LaneSet& ls = model.initial().lane_set();
  StageAssignment a;
  a.x.resize(K + 1);
  a.delta.resize(K + 1);
  a.y.assign(K + 1, std::vector<int>(n, 0));
  a.z.assign(K + 1, std::vector<int>(n, 0));
  a.w.assign(K + 1, std::vector<int>(n, 0));

  LaneConfiguration c = model.initial();
  auto record = [&](int k) {
    a.x[k].assign(c.slots().begin(), c.slots().end());
    a.delta[k].resize(n);
    for (int i = 0; i < n; ++i) a.delta[k][i] = a.x[k][i] != 0 ? 1 : 0;
    a.w[k] = blocking_flags(c);
  };
  record(0);
  for (int k = 1; k <= K; ++k) {
    const Move& m = plan[k - 1];
    a.z[k][ls.offset(m.from_lane) + m.from_pos] = 1;
    a.y[k][ls.offset(m.to_lane) + m.to_pos] = 1;
    c = apply_move(c, m);
    record(k);
  }
  return a;
}

long objective_value(const StageModel& model, const StageAssignment& a) {
  const LaneSet& ls = model.initial().lane_set();
  long total = 0;
  for (int k = 1; k <= model.permitted_moves(); ++k)
    for (int s = 0; s < ls.lane_count(); ++s)
      for (int t = 0; t < ls.capacity(s); ++t) {
        if (!a.z[k][ls.offset(s) + t]) continue;
        for (int s2 = 0; s2 < ls.lane_count(); ++s2)
          for (int t2 = 0; t2 < ls.capacity(s2); ++t2)
            if (a.y[k][ls.offset(s2) + t2]) total += slot_distance(ls, s, t, s2, t2);
      }
  return total;
}

std::vector<std::string> violated_constraints(const StageModel& model, const StageAssignment& a) {
  const LaneSet& ls = model.initial().lane_set();
  const int K = model.permitted_moves();
  const int P = model.max_group();
  const int L = ls.lane_count();
  std::vector<std::string> out;
  auto fail = [&](const char* label) {
    if (std::find(out.begin(), out.end(), label) == out.end()) out.emplace_back(label);
  };
  auto at = [&](const std::vector<std::vector<int>>& v, int k, int s, int t) {
    return v[k][ls.offset(s) + t];
  };

  for (int i = 0; i < model.slot_count(); ++i)
    if (a.x[0][i] != model.initial().slots()[i]) fail("initial-state");

  for (int k = 1; k <= K; ++k) {
    std::vector<int> count(P + 1, 0);
    for (int v : a.x[k])
      if (v >= 0 && v <= P) ++count[v];
    for (int p = 0; p <= P; ++p)
      if (count[p] != model.census()[p]) fail("census");
    int ys = 0, zs = 0;
    for (int v : a.y[k]) ys += v;
    for (int v : a.z[k]) zs += v;
    if (ys != 1) fail("one-placement");
    if (zs != 1) fail("one-removal");
  }

  for (int k = 0; k <= K; ++k)
    for (int s = 0; s < L; ++s)
      for (int t = 0; t < ls.capacity(s); ++t) {
        const int x = at(a.x, k, s, t), d = at(a.delta, k, s, t);
        if (x > P * d) fail("occupied-value");
        if (d > x) fail("occupied-indicator");
      }

  for (int k = 1; k <= K; ++k)
    for (int s = 0; s < L; ++s) {
      const int cap = ls.capacity(s);
      for (int t = 0; t < cap; ++t) {
        const int x0 = at(a.x, k - 1, s, t), x1 = at(a.x, k, s, t);
        const int d0 = at(a.delta, k - 1, s, t), d1 = at(a.delta, k, s, t);
        const int y = at(a.y, k, s, t), z = at(a.z, k, s, t);
        if (x0 > x1 + P * (1 - d1)) fail("slot-kept-down");
        if (x1 > x0 + P * (1 - d0)) fail("slot-kept-up");
        if (d1 + z != y + d0) fail("occupancy-flow");
        if (t + 1 < cap &&
            at(a.y, k, s, t + 1) + at(a.delta, k - 1, s, t + 1) + z > d0)
          fail("place-on-top");
      }
      if (at(a.y, k, s, 0) + at(a.delta, k - 1, s, 0) > 1) fail("place-from-bottom");
      if (k < K) {
        int placed = 0, removed_next = 0;
        for (int t = 0; t < cap; ++t) {
          if (at(a.y, k, s, t) > at(a.delta, k + 1, s, t)) fail("placed-stays");
          placed += at(a.y, k, s, t);
          removed_next += at(a.z, k + 1, s, t);
        }
        if (at(a.z, k + 1, s, cap - 1) + at(a.y, k, s, cap - 1) > at(a.delta, k, s, cap - 1))
          fail("remove-from-top");
        if (placed + removed_next > 1) fail("no-place-then-remove");
      }
      if (k == 1 && at(a.z, 1, s, cap - 1) > at(a.delta, 0, s, cap - 1)) fail("first-removal-occupied");
    }

  // Blocking indicators; stage 0 is included so that a horizon too short for
  // the initial disorder is rejected.
  for (int k = 0; k <= K; ++k) {
    int blocking = 0;
    for (int s = 0; s < L; ++s) {
      const int cap = ls.capacity(s);
      if (at(a.w, k, s, 0) != 0) fail("bottom-unblocked");
      for (int t = 0; t < cap; ++t) {
        const int w = at(a.w, k, s, t);
        blocking += w;
        if (w > at(a.delta, k, s, t)) fail("blocking-occupied");
        if (t + 1 < cap) {
          const int xt = at(a.x, k, s, t), xn = at(a.x, k, s, t + 1);
          const int wn = at(a.w, k, s, t + 1);
          if (xn > xt + P * wn) fail("blocking-lower");
          if (w + at(a.delta, k, s, t + 1) > wn + 1) fail("blocking-propagates");
          if (xt + 1 > xn + (P + 1) * (1 - wn + w)) fail("blocking-upper");
        }
      }
    }
    if (blocking + k > K) fail("remaining-moves");
  }

  if (model.distance_upper_bound() && objective_value(model, a) > *model.distance_upper_bound())
    fail("UB");
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class Dfs {
 public:
  Dfs(const StageModel& model, const ExactOptions& options, double seconds_left)
      : model_(model),
        options_(options),
        ls_(model.initial().lane_set()),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(seconds_left))) {
    const int L = ls_.lane_count();
    min_out_.assign(L, 0);
    for (int s = 0; s < L; ++s) {
      int best = std::numeric_limits<int>::max();
      for (int t = 0; t < L; ++t)
        if (t != s) best = std::min(best, ls_.distance(s, t));
      min_out_[s] = L > 1 ? best : 0;
    }
    limit_ = model.distance_upper_bound() ? *model.distance_upper_bound()
                                          : std::numeric_limits<int>::max() / 2;
  }

  SearchOutcome run() {
    const LaneConfiguration& root = model_.initial();
    LowerBound bound = options_.bound_pruning ? lb(root) : LowerBound{};
    if (!options_.bound_pruning) bound.bx = bound.h = root.blocking_total();
    if (bound.feasible) recurse(root, bound, 0, 0, -1);
    SearchOutcome out;
    out.nodes = nodes_;
    if (timed_out_) {
      out.status = SearchOutcome::Status::TimedOut;
    } else if (found_) {
      out.status = SearchOutcome::Status::Feasible;
      out.moves = best_;
      out.distance = best_distance_;
    }
    return out;
  }

 private:
  int remaining_distance_bound(const LaneConfiguration& c) const {
    int total = 0;
    for (int s = 0; s < c.lane_count(); ++s) {
      const int blocking = c.size(s) - sorted_prefix_length(c.contents(s));
      total += blocking * min_out_[s];
    }
    return total;
  }

  bool seen_cheaper(const LaneConfiguration& c, int k, int last_target, int dist) {
    std::string key(reinterpret_cast<const char*>(c.slots().data()), c.slots().size());
    key.push_back(static_cast<char>(k & 0xFF));
    key.push_back(static_cast<char>((k >> 8) & 0xFF));
    key.push_back(static_cast<char>(last_target + 1));
    key.push_back(static_cast<char>((last_target + 1) >> 8));
    auto it = table_.find(key);
    if (it != table_.end()) {
      if (it->second <= dist) return true;
      it->second = dist;
      return false;
    }
    if (table_.size() < options_.max_table_entries) table_.emplace(std::move(key), dist);
    return false;
  }

  void recurse(const LaneConfiguration& c, const LowerBound& bound, int k, int dist,
               int last_target) {
    if (timed_out_) return;
    ++nodes_;
    if ((nodes_ & 1023u) == 0 && Clock::now() >= deadline_) {
      timed_out_ = true;
      return;
    }
    const int remaining = model_.permitted_moves() - k;
    if (remaining == 0) {
      if (c.blocking_total() == 0 && dist <= limit_) {
        found_ = true;
        best_ = path_;
        best_distance_ = dist;
        limit_ = dist - 1;
      }
      return;
    }
    if (c.blocking_total() > remaining) return;
    if (options_.bound_pruning && bound.h > remaining) return;
    if (options_.distance_pruning && dist + remaining_distance_bound(c) > limit_) return;
    if (options_.transposition_table && seen_cheaper(c, k, last_target, dist)) return;

    for (const Move& m : legal_moves(c)) {
      if (options_.transitive_avoidance && m.from_lane == last_target) continue;
      const int next_dist = dist + m.distance;
      if (next_dist > limit_) continue;
      LaneConfiguration child = apply_move(c, m);
      LowerBound child_bound;
      if (options_.bound_pruning) {
        child_bound = lb_incremental(bound, c, child, m);
        if (!child_bound.feasible) continue;
      }
      path_.push_back(m);
      recurse(child, child_bound, k + 1, next_dist, m.to_lane);
      path_.pop_back();
      if (timed_out_) return;
    }
  }

  const StageModel& model_;
  const ExactOptions& options_;
  const LaneSet& ls_;
  Clock::time_point deadline_;
  std::vector<int> min_out_;
  std::unordered_map<std::string, int> table_;
  std::vector<Move> path_;
  std::vector<Move> best_;
  int best_distance_ = 0;
  int limit_ = 0;
  bool found_ = false;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchOutcome DepthFirstEngine::minimize(const StageModel& model, const ExactOptions& options,
                                         double seconds_left) const {
  return Dfs(model, options, seconds_left).run();
}

SearchOutcome complete_search(const StageModel& model, const ExactOptions& options) {
  return DepthFirstEngine{}.minimize(model, options, options.timeout_s);
}

Solution solve_exact(const LaneConfiguration& root, const Solution& astar_solution,
                     const ExactOptions& options) {
  return solve_exact(root, astar_solution, options, DepthFirstEngine{});
}

Solution solve_exact(const LaneConfiguration& root, const Solution& astar_solution,
                     const ExactOptions& options, const SearchEngine& engine) {
  if (!astar_solution.solved())
    throw std::invalid_argument("exact solver needs a solved A* plan as upper bound");
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  Solution result;
  SolveStats& stats = result.stats;
  const LowerBound root_bound = lb(root);
  stats.root_lower_bound = root_bound.h;

  const int k_upper = astar_solution.k;
  const int c_upper = astar_solution.total_distance;
  for (int kbar = root_bound.h; kbar <= k_upper; ++kbar) {
    stats.final_depth = kbar;
    const double left = options.timeout_s - elapsed();
    if (left <= 0) {
      result.status = SolveStatus::TimedOut;
      stats.wall_time_s = elapsed();
      return result;
    }
    const StageModel model = build_model(root, kbar, c_upper);
    const SearchOutcome outcome = engine.minimize(model, options, left);
    stats.nodes_evaluated += outcome.nodes;
    if (outcome.status == SearchOutcome::Status::TimedOut) {
      result.status = SolveStatus::TimedOut;
      stats.wall_time_s = elapsed();
      return result;
    }
    if (outcome.status == SearchOutcome::Status::Feasible) {
      SolveStats s = stats;
      s.optimal_moves = true;
      s.optimal_distance = true;
      result = make_solution(outcome.moves, s);
      result.stats.wall_time_s = elapsed();
      return result;
    }
  }
  result.status = SolveStatus::Infeasible;
  stats.wall_time_s = elapsed();
  return result;
}

}  // namespace marshal
