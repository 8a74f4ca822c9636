#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "marshal/astar.hpp"
#include "marshal/bench.hpp"
#include "marshal/verify.hpp"
#include "oracles.hpp"

using namespace marshal;

namespace {

LaneConfiguration lanes(const std::vector<int>& caps, const std::vector<std::vector<Group>>& c,
                        int groups = 5, std::vector<int> dists = {}) {
  return LaneConfiguration(LaneSet::from_capacities(caps, groups, std::move(dists)), c);
}

bool mentions(const ValidationReport& r, const std::string& what) {
  for (const auto& v : r.violations)
    if (v.find(what) != std::string::npos) return true;
  return false;
}

Prepared small_instance(std::uint64_t seed) {
  GenConfig c;
  c.bay_columns = c.bay_rows = 3;
  c.warehouse_rows = c.warehouse_cols = 2;
  c.fill = 0.9;
  c.classes = 10;
  c.seed = seed;
  return prepare(generate(c));
}

}  // namespace

TEST_CASE("empty plan on a sorted instance") {
  WarehouseInstance inst;
  inst.warehouse_rows = inst.warehouse_cols = 1;
  BaySpec bay(3, 3, 5);
  bay.set(0, 0, 3);
  bay.set(1, 0, 2);
  inst.bays.push_back(bay);
  const auto p = prepare(inst);
  REQUIRE(p.lanes.blocking_total() == 0);
  const Solution s = make_solution({}, {});
  const auto r = replay(inst, p.assignments, s);
  CHECK(r.valid());
  CHECK(r.replayed_k == 0);
  CHECK(replay(p.lanes, s).valid());
}

TEST_CASE("solver plans replay on the instance") {
  int moved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = small_instance(seed);
    const auto s = solve_astar(p.lanes);
    REQUIRE(s.solved());
    const auto r = replay(p.instance, p.assignments, s);
    REQUIRE(r.valid());
    CHECK(r.replayed_distance == s.total_distance);
    moved += s.k > 0;
  }
  CHECK(moved > 0);
}

TEST_CASE("tampering is reported") {
  Prepared p;
  Solution s;
  for (std::uint64_t seed = 1; seed < 200; ++seed) {
    p = small_instance(seed);
    s = solve_astar(p.lanes);
    if (s.k >= 2) break;
  }
  REQUIRE(s.k >= 2);
  auto bad = s;
  bad.moves[0].distance += 1;
  auto r = replay(p.instance, p.assignments, bad);
  CHECK(mentions(r, "move 1: distance mismatch"));
  CHECK(r.replayed_distance == s.total_distance);

  bad = s;
  bad.total_distance += 2;
  r = replay(p.instance, p.assignments, bad);
  CHECK(r.violations == std::vector<std::string>{"total distance mismatch"});

  bad = s;
  bad.k += 1;
  CHECK(mentions(replay(p.instance, p.assignments, bad), "move count mismatch"));

  bad = s;
  bad.moves.pop_back();
  bad.k -= 1;
  bad.total_distance -= s.moves.back().distance;
  CHECK(mentions(replay(p.instance, p.assignments, bad), "still has blocking"));

  bad = s;
  bad.moves[0].to_lane = bad.moves[0].from_lane;
  CHECK(mentions(replay(p.instance, p.assignments, bad), "move 1: illegal move"));

  std::vector<std::pair<int, int>> points;
  for (const Move& m : s.moves)
    points.emplace_back(p.lanes.lane_set().lane(m.from_lane).access_point,
                        p.lanes.lane_set().lane(m.to_lane).access_point);
  CHECK(replay(p.instance, p.assignments, s, false, &points).valid());
  points[1].second += 1;
  CHECK(mentions(replay(p.instance, p.assignments, s, false, &points), "move 2: access point"));
}

TEST_CASE("brute force examples") {
  const auto sorted = brute_force_optimum(lanes({3, 3}, {{5, 3, 1}, {4}}), 3);
  CHECK(sorted.k == 0);
  CHECK(sorted.distance == 0);
  const auto one = brute_force_optimum(
      lanes({2, 1, 1}, {{2, 5}, {}, {}}, 5, {0, 7, 3, 7, 0, 4, 3, 4, 0}), 3);
  CHECK(one.k == 1);
  CHECK(one.distance == 3);
  CHECK_THROWS_AS(brute_force_optimum(lanes({2, 1}, {{1, 2}, {3}}), 5), NoSolutionWithin);
  CHECK_THROWS_AS(brute_force_optimum(lanes({3, 3}, {{1, 2, 3}, {}}), 1), NoSolutionWithin);
  CHECK(brute_force_optimum(lanes({3, 3}, {{1, 2, 3}, {}}), 3).k == 2);
}

TEST_CASE("brute force plans replay") {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 100; ++n) {
    const auto c = oracle::random_lanes(rng, {3, 2, 2, 2}, 4, 6, oracle::random_metric(rng, 4));
    BruteForceResult b;
    try {
      b = brute_force_optimum(c, 8);
    } catch (const NoSolutionWithin&) {
      continue;
    }
    const Solution s = make_solution(b.moves, {});
    REQUIRE(s.k == b.k);
    REQUIRE(s.total_distance == b.distance);
    REQUIRE(replay(c, s).valid());
  }
}

TEST_CASE("order-preserving relabelling and lane permutation keep the optimum") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 60; ++n) {
    const std::vector<int> caps{3, 2, 2, 1};
    const auto metric = oracle::random_metric(rng, 4);
    const auto c = oracle::random_lanes(rng, caps, 4, 5, metric);
    BruteForceResult base;
    try {
      base = brute_force_optimum(c, 8);
    } catch (const NoSolutionWithin&) {
      continue;
    }
    auto contents = c.to_vectors();
    for (auto& l : contents)
      for (auto& g : l) g = static_cast<Group>(2 * g);
    const LaneConfiguration scaled(LaneSet::from_capacities(caps, 8, metric), contents);
    const auto s = brute_force_optimum(scaled, 8);
    REQUIRE(s.k == base.k);
    REQUIRE(s.distance == base.distance);

    std::vector<int> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> caps2(4), metric2(16);
    std::vector<std::vector<Group>> contents2(4);
    const auto orig = c.to_vectors();
    for (int a = 0; a < 4; ++a) {
      caps2[a] = caps[perm[a]];
      contents2[a] = orig[perm[a]];
      for (int b = 0; b < 4; ++b) metric2[a * 4 + b] = metric[perm[a] * 4 + perm[b]];
    }
    const auto q = brute_force_optimum(
        LaneConfiguration(LaneSet::from_capacities(caps2, 4, metric2), contents2), 8);
    REQUIRE(q.k == base.k);
    REQUIRE(q.distance == base.distance);
  }
}
