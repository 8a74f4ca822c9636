#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "marshal/access.hpp"
#include "marshal/generator.hpp"
#include "marshal/lower_bound.hpp"
#include "oracles.hpp"

using namespace marshal;

namespace {

BaySpec bay_from_rows(const std::vector<std::vector<int>>& rows, int groups = 9,
                      SideSet sides = SideSet::all()) {
  BaySpec bay(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), groups, sides);
  for (int j = 0; j < bay.rows; ++j)
    for (int i = 0; i < bay.columns; ++i) bay.set(i, j, static_cast<Group>(rows[j][i]));
  return bay;
}

std::vector<Side> dirs_from(const std::vector<std::string>& rows) {
  std::vector<Side> d;
  for (const auto& r : rows)
    for (char c : r) d.push_back(side_from_letter(c));
  return d;
}

BaySpec random_bay(std::mt19937_64& rng, int n, int groups, double fill) {
  GenConfig c;
  c.bay_columns = c.bay_rows = n;
  c.warehouse_rows = c.warehouse_cols = 1;
  c.fill = fill;
  c.classes = groups;
  c.unrestricted = true;
  c.seed = rng();
  return generate(c).bays.front();
}

// Any load pattern, holes allowed; may be infeasible.
BaySpec scattered_bay(std::mt19937_64& rng, int I, int J, int groups, double p) {
  BaySpec bay(I, J, groups);
  std::bernoulli_distribution occ(p);
  std::uniform_int_distribution<int> g(1, groups);
  for (int j = 0; j < J; ++j)
    for (int i = 0; i < I; ++i)
      if (occ(rng)) bay.set(i, j, static_cast<Group>(g(rng)));
  return bay;
}

}  // namespace

TEST_CASE("row read from the west and split between west and east") {
  const auto bay = bay_from_rows({{3, 1, 2}}, 5, SideSet::parse("EW"));
  const auto all_west = make_assignment(bay, dirs_from({"WWW"}));
  REQUIRE(all_west.lanes.size() == 1);
  CHECK(misplaced_count(bay, all_west) == 1);
  const auto split = make_assignment(bay, dirs_from({"WEE"}));
  CHECK(split.lanes.size() == 2);
  CHECK(misplaced_count(bay, split) == 1);
  CHECK(oracle::blocking(std::vector<int>{2, 1, 3}) == 1);
  CHECK(oracle::blocking(std::vector<int>{1, 2}) == 1);
}

TEST_CASE("lane induction") {
  BaySpec bay(3, 3, 5);
  const auto a = make_assignment(bay, dirs_from({"WWW", "WWW", "WWW"}));
  CHECK(a.lanes.size() == 3);
  for (const auto& l : a.lanes) {
    CHECK(l.cells.size() == 3);
    CHECK(l.side == Side::West);
    CHECK(l.access_stack().i == 0);
  }
  const auto mixed = make_assignment(bay, dirs_from({"NNE", "WSE", "SSS"}));
  int cells = 0;
  for (const auto& l : mixed.lanes) cells += static_cast<int>(l.cells.size());
  CHECK(cells == 9);
  CHECK_THROWS_AS(induce_lanes(bay, dirs_from({"EWW", "WWW", "WWW"})), std::invalid_argument);
  CHECK_THROWS_AS(induce_lanes(bay, dirs_from({"WWW", "WNW", "WWW"})), std::invalid_argument);
  BaySpec ew(3, 1, 5, SideSet::parse("EW"));
  CHECK_THROWS_AS(induce_lanes(ew, dirs_from({"NWW"})), std::invalid_argument);
}

TEST_CASE("holes are rejected") {
  const auto bay = bay_from_rows({{0, 4, 0}, {0, 0, 0}, {0, 0, 0}});
  std::vector<Side> all_west(9, Side::West);
  CHECK_THROWS_AS(make_assignment(bay, all_west), std::invalid_argument);
  const auto ok = make_assignment(bay, dirs_from({"WNE", "WWW", "WWW"}));
  CHECK(is_hole_free(bay, ok));
}

TEST_CASE("empty bay") {
  BaySpec bay(3, 3, 5);
  const auto opt = optimal_assignments(bay, 10);
  CHECK(opt.size() == 10);
  for (const auto& a : opt) CHECK(a.misplaced == 0);
  CHECK(opt.front().directions == std::vector<Side>(9, Side::West));
  CHECK(select_assignment(opt, bay) == opt.front());
}

TEST_CASE("single row with east and west access") {
  const int K = 5;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    BaySpec bay(K, 1, 5, SideSet::parse("EW"));
    for (int i = 0; i < K; ++i)
      bay.set(i, 0, static_cast<Group>(std::uniform_int_distribution<int>(1, 5)(rng)));
    int best = 1 << 30, ways = 0;
    for (int a = 0; a <= K; ++a) {
      std::vector<int> west, east;
      for (int i = a - 1; i >= 0; --i) west.push_back(bay.at(i, 0));
      for (int i = a; i < K; ++i) east.push_back(bay.at(i, 0));
      const int cost = oracle::blocking(west) + oracle::blocking(east);
      if (cost < best) { best = cost; ways = 1; }
      else if (cost == best) ++ways;
    }
    const auto opt = optimal_assignments(bay, K + 1);
    REQUIRE(static_cast<int>(opt.size()) == ways);
    for (const auto& a : opt) REQUIRE(a.misplaced == best);
  }
}

TEST_CASE("rows sorted toward both boundaries score zero") {
  const auto bay = bay_from_rows({{3, 5, 4}, {1, 6, 2}, {9, 9, 9}});
  const auto opt = optimal_assignments(bay, 10);
  CHECK(opt.front().misplaced == 0);
  CHECK(oracle::brute_force_partitions(bay).best == 0);
}

TEST_CASE("optimum and its multiplicity match exhaustive partition search") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const int I = 2 + trial % 3, J = 2 + (trial / 3) % 3;
    const double p = 0.3 + 0.1 * (trial % 6);
    auto bay = scattered_bay(rng, I, J, 4, p);
    if (trial % 4 == 0) bay.access_sides = SideSet::parse(trial % 8 == 0 ? "NW" : "ESW");
    const auto oracle_opt = oracle::brute_force_partitions(bay);
    if (oracle_opt.best < 0) {
      REQUIRE_THROWS_AS(optimal_assignments(bay, 10), InfeasibleAssignment);
      continue;
    }
    const auto opt = optimal_assignments(bay, 1000);
    REQUIRE(static_cast<long>(opt.size()) == std::min<long>(1000, oracle_opt.count));
    std::set<std::vector<Side>> distinct;
    for (const auto& a : opt) {
      REQUIRE(a.misplaced == oracle_opt.best);
      REQUIRE(is_hole_free(bay, a));
      distinct.insert(a.directions);
    }
    REQUIRE(distinct.size() == opt.size());
  }
}

TEST_CASE("enumeration order is deterministic and limited") {
  std::mt19937_64 rng(4);
  const auto bay = random_bay(rng, 4, 5, 0.6);
  const auto a = optimal_assignments(bay, 10);
  const auto b = optimal_assignments(bay, 10);
  CHECK(a == b);
  CHECK(a.size() <= 10);
  const auto three = optimal_assignments(bay, 3);
  for (std::size_t k = 0; k < three.size(); ++k) CHECK(three[k] == a[k]);
}

TEST_CASE("selection minimizes the full lower bound, first wins ties") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto bay = random_bay(rng, 3 + trial % 2, 10, 0.8);
    const auto opt = optimal_assignments(bay, 10);
    const auto& chosen = select_assignment(opt, bay);
    const int h = assignment_lower_bound(bay, chosen);
    std::size_t first = opt.size();
    for (std::size_t k = 0; k < opt.size(); ++k) {
      REQUIRE(assignment_lower_bound(bay, opt[k]) >= h);
      if (first == opt.size() && assignment_lower_bound(bay, opt[k]) == h) first = k;
    }
    REQUIRE(&chosen == &opt[first]);
  }
  const auto bay = random_bay(rng, 3, 5, 0.4);
  const auto one = optimal_assignments(bay, 1);
  CHECK(&select_assignment(one, bay) == &one[0]);
}

TEST_CASE("transposed bays") {
  const auto tall = bay_from_rows({{1, 2}, {3, 0}, {0, 0}, {2, 2}});
  const auto opt = optimal_assignments(tall, 50);
  const auto o = oracle::brute_force_partitions(tall);
  CHECK(opt.front().misplaced == o.best);
  CHECK(static_cast<long>(opt.size()) == std::min<long>(50, o.count));
}

TEST_CASE("virtual lanes round trip") {
  std::mt19937_64 rng(21);
  GenConfig c;
  c.bay_columns = c.bay_rows = 3;
  c.warehouse_rows = c.warehouse_cols = 2;
  c.fill = 0.6;
  c.classes = 5;
  c.seed = 12;
  const auto inst = generate(c);
  const auto assignments = fix_access_directions(inst, 10, 1);
  CHECK(fix_access_directions(inst, 10, 4) == assignments);
  const auto layout = build_layout(inst);
  const auto dist = all_pairs_distances(layout);
  const auto lanes = to_virtual_lanes(inst, assignments, layout, dist);
  CHECK(lanes.lane_set().total_slots() == inst.slot_count());
  CHECK(lanes.load_count() == inst.load_count());
  const auto back = occupancy_from_lanes(inst, lanes);
  for (std::size_t b = 0; b < inst.bays.size(); ++b) CHECK(back[b].occupancy == inst.bays[b].occupancy);
  int misplaced = 0;
  for (std::size_t b = 0; b < inst.bays.size(); ++b) misplaced += assignments[b].misplaced;
  CHECK(lanes.blocking_total() == misplaced);
  for (int s = 0; s < lanes.lane_count(); ++s)
    for (int t = 0; t < lanes.lane_count(); ++t)
      CHECK(lanes.lane_set().distance(s, t) ==
            dist(lanes.lane_set().lane(s).access_point, lanes.lane_set().lane(t).access_point));

  WarehouseInstance empty = inst;
  for (auto& b : empty.bays) std::fill(b.occupancy.begin(), b.occupancy.end(), kEmpty);
  const auto ea = fix_access_directions(empty);
  const auto el = to_virtual_lanes(empty, ea, layout, dist);
  CHECK(el.load_count() == 0);
  CHECK(el.lane_set().total_slots() == empty.slot_count());
  CHECK(el.lane_count() == 12);
}

TEST_CASE("misplaced counts are independent per bay") {
  std::mt19937_64 rng(31);
  GenConfig c;
  c.bay_columns = c.bay_rows = 3;
  c.warehouse_rows = 1;
  c.warehouse_cols = 2;
  c.fill = 0.8;
  c.classes = 10;
  c.seed = 5;
  c.unrestricted = true;
  auto inst = generate(c);
  const auto before = optimal_assignments(inst.bays[1], 10);
  inst.bays[0] = random_bay(rng, 3, 10, 0.4);
  CHECK(optimal_assignments(inst.bays[1], 10) == before);
}

TEST_CASE("multi-tier bays are rejected") {
  BaySpec bay(2, 2, 5, SideSet::all(), 2);
  CHECK_THROWS(optimal_assignments(bay, 1));
}
