#include "marshal/lower_bound.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace marshal {

LaneProfile lane_profile(std::span<const Group> c, int capacity, int groups, int lane) {
  LaneProfile p;
  p.lane = lane;
  p.prefix_len = sorted_prefix_length(c);
  p.threshold = p.prefix_len > 0 ? c[p.prefix_len - 1] : static_cast<Group>(groups);
  p.blocking_suffix.assign(c.begin() + p.prefix_len, c.end());
  p.free_after_clear = capacity - p.prefix_len;
  return p;
}

LaneProfile lane_profile(const LaneConfiguration& config, int lane) {
  return lane_profile(config.contents(lane), config.capacity(lane), config.groups(), lane);
}

bool SupplyDemandAux::has_surplus() const {
  for (int g = 1; g <= groups; ++g)
    if (surplus[g] > 0) return true;
  return false;
}

namespace {

void add_profile(SupplyDemandAux& aux, const LaneProfile& p, int sign) {
  for (Group g : p.blocking_suffix) aux.demand[g] += sign;
  aux.supply[p.threshold] += sign * p.free_after_clear;
  aux.blocking += sign * static_cast<int>(p.blocking_suffix.size());
}

void accumulate(SupplyDemandAux& aux) {
  int cd = 0, cs = 0;
  for (int g = aux.groups; g >= 1; --g) {
    cd += aux.demand[g];
    cs += aux.supply[g];
    aux.cum_demand[g] = cd;
    aux.cum_supply[g] = cs;
    aux.surplus[g] = cd - cs;
  }
}

SupplyDemandAux empty_aux(int groups) {
  SupplyDemandAux aux;
  aux.groups = groups;
  const std::size_t n = static_cast<std::size_t>(groups) + 1;
  aux.demand.assign(n, 0);
  aux.supply.assign(n, 0);
  aux.cum_demand.assign(n, 0);
  aux.cum_supply.assign(n, 0);
  aux.surplus.assign(n, 0);
  return aux;
}

// Lanes that share threshold, free count and sorted prefix behave identically
// in the covering problem and are searched as one class with a multiplicity.
struct LaneClass {
  int count = 0;
  int prefix_len = 0;
  // benefit[r - 1][g]: surplus reduction at group g from lifting r prefix loads.
  std::vector<std::vector<int>> benefit;
};

class CoverSearch {
 public:
  CoverSearch(std::vector<LaneClass> classes, int groups, std::uint64_t node_budget)
      : classes_(std::move(classes)), groups_(groups), node_budget_(node_budget) {
    remaining_.reserve(classes_.size());
    for (const auto& c : classes_) remaining_.push_back(c.count);
  }

  bool coverable_at_all(const std::vector<int>& need) const {
    for (int g = 1; g <= groups_; ++g) {
      long total = 0;
      for (const auto& c : classes_)
        total += static_cast<long>(c.count) * c.benefit[c.prefix_len - 1][g];
      if (total < need[g]) return false;
    }
    return true;
  }

  int max_budget() const {
    int b = 0;
    for (const auto& c : classes_) b += c.count * c.prefix_len;
    return b;
  }

  // true: covered within budget; false: proven impossible. Throws Exhausted.
  struct Exhausted {};
  bool search(const std::vector<int>& need, int budget) {
    if (++nodes_ > node_budget_) throw Exhausted{};
    int top = 0;
    for (int g = groups_; g >= 1; --g)
      if (need[g] > 0) { top = g; break; }
    if (top == 0) return true;
    if (budget == 0) return false;
    if (!upper_bound_covers(need, budget)) return false;

    std::vector<int> next(need.size());
    for (std::size_t q = 0; q < classes_.size(); ++q) {
      if (remaining_[q] == 0) continue;
      const auto& cls = classes_[q];
      const int rmax = std::min(budget, cls.prefix_len);
      for (int r = 1; r <= rmax; ++r) {
        const auto& b = cls.benefit[r - 1];
        if (b[top] == 0) continue;
        for (int g = 1; g <= groups_; ++g) next[g] = std::max(0, need[g] - b[g]);
        --remaining_[q];
        const bool ok = search(next, budget - r);
        ++remaining_[q];
        if (ok) return true;
      }
    }
    return false;
  }

 private:
  // Each contributing lane uses at least one unit of budget, and benefits are
  // monotone in the number of lifted loads.
  bool upper_bound_covers(const std::vector<int>& need, int budget) {
    for (int g = 1; g <= groups_; ++g) {
      if (need[g] <= 0) continue;
      values_.clear();
      for (std::size_t q = 0; q < classes_.size(); ++q) {
        if (remaining_[q] == 0) continue;
        const auto& cls = classes_[q];
        const int v = cls.benefit[std::min(budget, cls.prefix_len) - 1][g];
        if (v == 0) continue;
        for (int c = 0; c < std::min(remaining_[q], budget); ++c) values_.push_back(v);
      }
      const std::size_t take = std::min<std::size_t>(values_.size(), budget);
      std::partial_sort(values_.begin(), values_.begin() + take, values_.end(),
                        std::greater<>());
      const int sum = std::accumulate(values_.begin(), values_.begin() + take, 0);
      if (sum < need[g]) return false;
    }
    return true;
  }

  std::vector<LaneClass> classes_;
  std::vector<int> remaining_;
  std::vector<int> values_;
  int groups_;
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SupplyDemandAux supply_demand(const LaneConfiguration& config) {
  SupplyDemandAux aux = empty_aux(config.groups());
  for (int s = 0; s < config.lane_count(); ++s) add_profile(aux, lane_profile(config, s), +1);
  accumulate(aux);
  return aux;
}

int bx_bound(const LaneConfiguration& config) { return state_blocking(config); }

GxResult gx_bound(const SupplyDemandAux& aux, const LaneConfiguration& config,
                  std::uint64_t node_budget) {
  if (!aux.has_surplus()) return {};
  const int groups = aux.groups;
  std::vector<int> need(static_cast<std::size_t>(groups) + 1, 0);
  int top = 0;
  for (int g = 1; g <= groups; ++g) {
    need[g] = std::max(0, aux.surplus[g]);
    if (need[g] > 0) top = g;
  }

  // Only lanes whose threshold lies below a deficit group can help.
  std::map<std::tuple<int, int, std::vector<Group>>, int> keyed;
  for (int s = 0; s < config.lane_count(); ++s) {
    auto c = config.contents(s);
    const int m = sorted_prefix_length(c);
    if (m == 0) continue;
    const int threshold = c[m - 1];
    if (threshold >= top) continue;
    std::vector<Group> front_first(c.begin(), c.begin() + m);
    std::reverse(front_first.begin(), front_first.end());
    ++keyed[{threshold, config.capacity(s) - m, std::move(front_first)}];
  }

  std::vector<LaneClass> classes;
  for (const auto& [key, count] : keyed) {
    const auto& [threshold, free, prefix] = key;
    LaneClass cls;
    cls.count = count;
    cls.prefix_len = static_cast<int>(prefix.size());
    for (int r = 1; r <= cls.prefix_len; ++r) {
      const int raised = r < cls.prefix_len ? prefix[r] : groups;
      std::vector<int> b(static_cast<std::size_t>(groups) + 1, 0);
      for (int g = threshold + 1; g <= raised; ++g) {
        int lifted_below = 0;
        for (int k = 0; k < r; ++k) lifted_below += prefix[k] < g ? 1 : 0;
        b[g] = free + lifted_below;
      }
      cls.benefit.push_back(std::move(b));
    }
    classes.push_back(std::move(cls));
  }

  CoverSearch search(std::move(classes), groups, node_budget);
  if (!search.coverable_at_all(need)) return {0, false, true};
  const int limit = search.max_budget();
  for (int budget = 1; budget <= limit; ++budget) {
    try {
      if (search.search(need, budget)) return {budget, true, true};
    } catch (const CoverSearch::Exhausted&) {
      return {budget, true, false};
    }
  }
  return {limit, true, true};
}

namespace {

LowerBound finish(SupplyDemandAux aux, const LaneConfiguration& config) {
  LowerBound out;
  out.bx = aux.blocking;
  const GxResult gx = gx_bound(aux, config);
  out.gx = gx.moves;
  out.feasible = gx.feasible;
  out.exact = gx.exact;
  out.h = out.bx + out.gx;
  out.aux = std::move(aux);
  return out;
}

}  // namespace

LowerBound lb(const LaneConfiguration& config) { return finish(supply_demand(config), config); }

LowerBound lb_incremental(const LowerBound& parent_bound, const LaneConfiguration& parent,
                          const LaneConfiguration& child, const Move& move) {
  const SupplyDemandAux& base = parent_bound.aux;
  SupplyDemandAux delta = empty_aux(base.groups);
  for (int s : {move.from_lane, move.to_lane}) {
    add_profile(delta, lane_profile(parent, s), -1);
    add_profile(delta, lane_profile(child, s), +1);
  }
  accumulate(delta);

  SupplyDemandAux aux = base;
  aux.blocking += delta.blocking;
  for (int g = 1; g <= base.groups; ++g) {
    aux.demand[g] += delta.demand[g];
    aux.supply[g] += delta.supply[g];
    aux.cum_demand[g] += delta.cum_demand[g];
    aux.cum_supply[g] += delta.cum_supply[g];
    aux.surplus[g] += delta.surplus[g];
  }
  return finish(std::move(aux), child);
}

}  // namespace marshal
