#include "marshal/access.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "marshal/lower_bound.hpp"

namespace marshal {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Groups of `cells` read deepest-first; returns kInf if a load sits in front of a gap.
int segment_cost(const BaySpec& bay, const std::vector<StackPos>& cells) {
  std::vector<Group> contents;
  bool gap = false;
  for (const auto& c : cells) {
    const Group g = bay.at(c.i, c.j);
    if (g == kEmpty) {
      gap = true;
    } else {
      if (gap) return kInf;
      contents.push_back(g);
    }
  }
  return blocking_count(contents);
}

std::vector<StackPos> segment_cells(int columns, int rows, Side side, int line, int len) {
  std::vector<StackPos> cells;
  cells.reserve(static_cast<std::size_t>(len));
  for (int k = len - 1; k >= 0; --k) {
    switch (side) {
      case Side::West: cells.push_back({k, line}); break;
      case Side::East: cells.push_back({columns - 1 - k, line}); break;
      case Side::North: cells.push_back({line, k}); break;
      case Side::South: cells.push_back({line, rows - 1 - k}); break;
    }
  }
  return cells;
}

BaySpec transposed(const BaySpec& bay) {
  SideSet sides;
  if (bay.access_sides.has(Side::West)) sides.add(Side::North);
  if (bay.access_sides.has(Side::North)) sides.add(Side::West);
  if (bay.access_sides.has(Side::East)) sides.add(Side::South);
  if (bay.access_sides.has(Side::South)) sides.add(Side::East);
  BaySpec t(bay.rows, bay.columns, bay.groups, sides);
  for (int j = 0; j < bay.rows; ++j)
    for (int i = 0; i < bay.columns; ++i) t.set(j, i, bay.at(i, j));
  return t;
}

Side transpose_side(Side s) {
  switch (s) {
    case Side::North: return Side::West;
    case Side::West: return Side::North;
    case Side::South: return Side::East;
    case Side::East: return Side::South;
  }
  return s;
}

enum Phase : int { kWest = 0, kHanded = 1, kEastPhase = 2 };

class SplitDp {
 public:
  explicit SplitDp(const BaySpec& bay) : bay_(bay), I_(bay.columns), J_(bay.rows) {
    pow3_.assign(static_cast<std::size_t>(J_) + 1, 1);
    for (int j = 1; j <= J_; ++j) pow3_[j] = pow3_[j - 1] * 3;
    states_ = pow3_[J_];
    const auto& sides = bay.access_sides;
    west_ = table(J_, I_, sides.has(Side::West), Side::West);
    east_ = table(J_, I_, sides.has(Side::East), Side::East);
    north_ = table(I_, J_, sides.has(Side::North), Side::North);
    south_ = table(I_, J_, sides.has(Side::South), Side::South);
    allow_west_ = sides.has(Side::West);
    allow_east_ = sides.has(Side::East);
    memo_.assign(static_cast<std::size_t>(I_ + 1) * states_, -1);
  }

  int optimum() { return cost_to_go(0, 0); }

  std::vector<std::vector<Side>> enumerate(int limit) {
    std::vector<std::vector<Side>> out;
    std::vector<Side> dirs(static_cast<std::size_t>(I_) * J_, Side::West);
    if (optimum() >= kInf) return out;
    walk(0, 0, dirs, out, limit);
    return out;
  }

 private:
  // cost[line][len], len 0..extent; kInf when the side is closed or the run has a gap.
  std::vector<std::vector<int>> table(int lines, int extent, bool allowed, Side side) const {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(lines),
                                    std::vector<int>(static_cast<std::size_t>(extent) + 1, kInf));
    for (int l = 0; l < lines; ++l) {
      t[l][0] = 0;
      if (!allowed) continue;
      for (int len = 1; len <= extent; ++len)
        t[l][len] = segment_cost(bay_, segment_cells(I_, J_, side, l, len));
    }
    return t;
  }

  int phase(int state, int j) const { return (state / pow3_[j]) % 3; }

  static int add(int a, int b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

  // Calls f(c, s, next_state, cost) for every way to cover column i: c cells
  // from the north, s from the south, the rest continuing or closing row runs.
  template <class F>
  void transitions(int i, int state, F&& f) const {
    for (int c = 0; c <= J_; ++c) {
      if (north_[i][c] >= kInf) continue;
      for (int s = 0; c + s <= J_; ++s) {
        if (south_[i][s] >= kInf) continue;
        rows(i, state, c, s, 0, 0, north_[i][c] + south_[i][s], f);
      }
    }
  }

  template <class F>
  void rows(int i, int state, int c, int s, int j, int next, int cost, F& f) const {
    if (cost >= kInf) return;
    if (j == J_) {
      f(c, s, next, cost);
      return;
    }
    const int p = phase(state, j);
    const bool by_column = j < c || j >= J_ - s;
    const int close_west = i > 0 ? west_[j][i] : 0;
    if (by_column) {
      if (p == kEastPhase) return;
      rows(i, state, c, s, j + 1, next + kHanded * pow3_[j],
           p == kWest ? add(cost, close_west) : cost, f);
      return;
    }
    switch (p) {
      case kWest:
        if (allow_west_) rows(i, state, c, s, j + 1, next + kWest * pow3_[j], cost, f);
        if (allow_east_)
          rows(i, state, c, s, j + 1, next + kEastPhase * pow3_[j],
               add(add(cost, close_west), east_[j][I_ - i]), f);
        break;
      case kHanded:
        if (allow_east_)
          rows(i, state, c, s, j + 1, next + kEastPhase * pow3_[j],
               add(cost, east_[j][I_ - i]), f);
        break;
      case kEastPhase:
        rows(i, state, c, s, j + 1, next + kEastPhase * pow3_[j], cost, f);
        break;
    }
  }

  int cost_to_go(int i, int state) {
    int& slot = memo_[static_cast<std::size_t>(i) * states_ + state];
    if (slot >= 0) return slot;
    int best = kInf;
    if (i == I_) {
      best = 0;
      for (int j = 0; j < J_; ++j)
        if (phase(state, j) == kWest) best = add(best, west_[j][I_]);
    } else {
      transitions(i, state, [&](int, int, int next, int cost) {
        best = std::min(best, add(cost, cost_to_go(i + 1, next)));
      });
    }
    slot = best;
    return best;
  }

  void walk(int i, int state, std::vector<Side>& dirs, std::vector<std::vector<Side>>& out,
            int limit) {
    if (static_cast<int>(out.size()) >= limit) return;
    if (i == I_) {
      out.push_back(dirs);
      return;
    }
    const int target = cost_to_go(i, state);
    struct Choice { int c, s, next; };
    std::vector<Choice> choices;
    transitions(i, state, [&](int c, int s, int next, int cost) {
      if (add(cost, cost_to_go(i + 1, next)) == target) choices.push_back({c, s, next});
    });
    for (const auto& ch : choices) {
      for (int j = 0; j < J_; ++j) {
        Side d;
        if (j < ch.c) d = Side::North;
        else if (j >= J_ - ch.s) d = Side::South;
        else d = phase(ch.next, j) == kWest ? Side::West : Side::East;
        dirs[static_cast<std::size_t>(j) * I_ + i] = d;
      }
      walk(i + 1, ch.next, dirs, out, limit);
      if (static_cast<int>(out.size()) >= limit) return;
    }
  }

  const BaySpec& bay_;
  int I_, J_;
  int states_ = 1;
  std::vector<int> pow3_;
  std::vector<std::vector<int>> west_, east_, north_, south_;
  bool allow_west_ = false, allow_east_ = false;
  std::vector<int> memo_;
};

}  // namespace

std::vector<std::string> AccessAssignment::rows_as_strings() const {
  std::vector<std::string> out;
  for (int j = 0; j < rows; ++j) {
    std::string r;
    for (int i = 0; i < columns; ++i) r.push_back(side_letter(at(i, j)));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LaneSegment> induce_lanes(const BaySpec& bay, const std::vector<Side>& dirs) {
  if (bay.tiers != 1) throw std::invalid_argument("virtual lanes require a single tier");
  const int I = bay.columns, J = bay.rows;
  if (dirs.size() != static_cast<std::size_t>(I) * J)
    throw std::invalid_argument("direction grid does not match the bay");
  auto at = [&](int i, int j) { return dirs[static_cast<std::size_t>(j) * I + i]; };
  for (Side d : dirs)
    if (!bay.access_sides.has(d))
      throw std::invalid_argument(std::string("direction ") + side_letter(d) + " not allowed");

  std::vector<int> west(J), east(J), north(I), south(I);
  for (int j = 0; j < J; ++j) {
    int a = 0;
    while (a < I && at(a, j) == Side::West) ++a;
    int e = 0;
    while (e < I && at(I - 1 - e, j) == Side::East) ++e;
    for (int i = a; i < I - e; ++i)
      if (at(i, j) == Side::West || at(i, j) == Side::East)
        throw std::invalid_argument("row run not anchored at its boundary");
    west[j] = a;
    east[j] = e;
  }
  for (int i = 0; i < I; ++i) {
    int c = 0;
    while (c < J && at(i, c) == Side::North) ++c;
    int s = 0;
    while (s < J && at(i, J - 1 - s) == Side::South) ++s;
    for (int j = c; j < J - s; ++j)
      if (at(i, j) == Side::North || at(i, j) == Side::South)
        throw std::invalid_argument("column run not anchored at its boundary");
    north[i] = c;
    south[i] = s;
  }

  std::vector<LaneSegment> lanes;
  auto emit = [&](Side side, int line, int len) {
    if (len == 0) return;
    LaneSegment seg{side, segment_cells(I, J, side, line, len)};
    if (segment_cost(bay, seg.cells) >= kInf)
      throw std::invalid_argument("lane has an empty slot behind a load");
    lanes.push_back(std::move(seg));
  };
  for (int i = 0; i < I; ++i) emit(Side::North, i, north[i]);
  for (int j = 0; j < J; ++j) emit(Side::East, j, east[j]);
  for (int i = 0; i < I; ++i) emit(Side::South, i, south[i]);
  for (int j = 0; j < J; ++j) emit(Side::West, j, west[j]);
  return lanes;
}

AccessAssignment make_assignment(const BaySpec& bay, std::vector<Side> directions) {
  AccessAssignment a;
  a.columns = bay.columns;
  a.rows = bay.rows;
  a.lanes = induce_lanes(bay, directions);
  a.directions = std::move(directions);
  a.misplaced = misplaced_count(bay, a);
  return a;
}

bool is_hole_free(const BaySpec& bay, const AccessAssignment& assignment) {
  for (const auto& lane : assignment.lanes)
    if (segment_cost(bay, lane.cells) >= kInf) return false;
  return true;
}

int misplaced_count(const BaySpec& bay, const AccessAssignment& assignment) {
  int total = 0;
  for (const auto& lane : assignment.lanes) total += segment_cost(bay, lane.cells);
  return total;
}

std::vector<AccessAssignment> SplitDpBackend::solve(const BaySpec& bay, int limit) const {
  const bool flip = bay.rows > bay.columns;
  const BaySpec work = flip ? transposed(bay) : bay;
  SplitDp dp(work);
  std::vector<AccessAssignment> out;
  for (auto& dirs : dp.enumerate(limit)) {
    if (flip) {
      std::vector<Side> back(dirs.size());
      for (int j = 0; j < work.rows; ++j)
        for (int i = 0; i < work.columns; ++i)
          back[static_cast<std::size_t>(i) * bay.columns + j] =
              transpose_side(dirs[static_cast<std::size_t>(j) * work.columns + i]);
      dirs = std::move(back);
    }
    out.push_back(make_assignment(bay, std::move(dirs)));
  }
  return out;
}

std::vector<AccessAssignment> optimal_assignments(const BaySpec& bay, int limit,
                                                  const AssignmentBackend& backend) {
  if (limit < 1) throw std::invalid_argument("limit must be at least 1");
  bay.validate();
  if (bay.tiers != 1) throw std::invalid_argument("virtual lanes require a single tier");
  auto out = backend.solve(bay, limit);
  if (out.empty()) throw InfeasibleAssignment("bay admits no hole-free access assignment");
  return out;
}

std::vector<AccessAssignment> optimal_assignments(const BaySpec& bay, int limit) {
  return optimal_assignments(bay, limit, SplitDpBackend{});
}

int assignment_lower_bound(const BaySpec& bay, const AccessAssignment& assignment) {
  std::vector<LaneSpec> specs;
  std::vector<std::vector<Group>> contents;
  for (const auto& seg : assignment.lanes) {
    LaneSpec spec;
    spec.side = seg.side;
    spec.cells = seg.cells;
    std::vector<Group> c;
    for (const auto& cell : seg.cells)
      if (bay.at(cell.i, cell.j) != kEmpty) c.push_back(bay.at(cell.i, cell.j));
    specs.push_back(std::move(spec));
    contents.push_back(std::move(c));
  }
  LaneConfiguration config(LaneSet::without_distances(std::move(specs), bay.groups), contents);
  return lb(config).h;
}

const AccessAssignment& select_assignment(const std::vector<AccessAssignment>& candidates,
                                          const BaySpec& bay) {
  if (candidates.empty()) throw std::invalid_argument("no candidate assignments");
  std::size_t best = 0;
  int best_h = assignment_lower_bound(bay, candidates[0]);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const int h = assignment_lower_bound(bay, candidates[k]);
    if (h < best_h) {
      best_h = h;
      best = k;
    }
  }
  return candidates[best];
}

std::vector<AccessAssignment> fix_access_directions(const WarehouseInstance& instance, int limit,
                                                    int jobs) {
  const std::size_t n = instance.bays.size();
  std::vector<AccessAssignment> out(n);
  auto solve_one = [&](std::size_t b) {
    const auto& bay = instance.bays[b];
    out[b] = select_assignment(optimal_assignments(bay, limit), bay);
  };
  if (jobs <= 1 || n < 2) {
    for (std::size_t b = 0; b < n; ++b) solve_one(b);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(jobs, static_cast<int>(n)); ++t)
    pool.emplace_back([&] {
      for (std::size_t b; (b = next++) < n;) {
        try {
          solve_one(b);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

LaneConfiguration to_virtual_lanes(const WarehouseInstance& instance,
                                   const std::vector<AccessAssignment>& assignments,
                                   const GridLayout& layout, const DistanceMatrix& distances,
                                   bool lane_depth) {
  if (assignments.size() != instance.bays.size())
    throw std::invalid_argument("need one assignment per bay");
  std::vector<LaneSpec> specs;
  std::vector<std::vector<Group>> contents;
  for (std::size_t b = 0; b < instance.bays.size(); ++b) {
    const auto& bay = instance.bays[b];
    const auto lanes = induce_lanes(bay, assignments[b].directions);
    for (const auto& seg : lanes) {
      LaneSpec spec;
      spec.bay = static_cast<int>(b);
      spec.side = seg.side;
      spec.cells = seg.cells;
      spec.access_point = layout.access_point_for(spec.bay, seg.side, seg.access_stack());
      if (spec.access_point < 0) throw LayoutError("lane has no access point");
      std::vector<Group> c;
      for (const auto& cell : seg.cells)
        if (bay.at(cell.i, cell.j) != kEmpty) c.push_back(bay.at(cell.i, cell.j));
      specs.push_back(std::move(spec));
      contents.push_back(std::move(c));
    }
  }
  const std::size_t n = specs.size();
  std::vector<int> table(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      table[s * n + t] = distances(specs[s].access_point, specs[t].access_point);
  auto lane_set = std::make_shared<const LaneSet>(std::move(specs), instance.groups(),
                                                  std::move(table), lane_depth);
  return LaneConfiguration(std::move(lane_set), contents);
}

std::vector<BaySpec> occupancy_from_lanes(const WarehouseInstance& instance,
                                          const LaneConfiguration& config) {
  std::vector<BaySpec> bays = instance.bays;
  for (auto& b : bays) std::fill(b.occupancy.begin(), b.occupancy.end(), kEmpty);
  const LaneSet& ls = config.lane_set();
  for (int s = 0; s < ls.lane_count(); ++s) {
    const auto& spec = ls.lane(s);
    auto c = config.contents(s);
    for (std::size_t t = 0; t < c.size(); ++t)
      bays[spec.bay].set(spec.cells[t].i, spec.cells[t].j, c[t]);
  }
  return bays;
}

}  // namespace marshal
