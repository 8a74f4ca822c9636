#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "marshal/lower_bound.hpp"
#include "marshal/verify.hpp"
#include "oracles.hpp"

using namespace marshal;

namespace {

LaneConfiguration lanes(const std::vector<int>& caps, const std::vector<std::vector<Group>>& c,
                        int groups = 5) {
  return LaneConfiguration(LaneSet::from_capacities(caps, groups), c);
}

}  // namespace

TEST_CASE("lane profiles") {
  const std::vector<Group> empty{}, sorted{5, 3, 1}, mixed{2, 5, 1};
  auto p = lane_profile(empty, 3, 5);
  CHECK(p.prefix_len == 0);
  CHECK(p.threshold == 5);
  CHECK(p.blocking_suffix.empty());
  CHECK(p.free_after_clear == 3);
  p = lane_profile(sorted, 3, 5);
  CHECK(p.prefix_len == 3);
  CHECK(p.threshold == 1);
  CHECK(p.blocking_suffix.empty());
  p = lane_profile(mixed, 3, 5);
  CHECK(p.prefix_len == 1);
  CHECK(p.threshold == 2);
  CHECK(p.blocking_suffix == std::vector<Group>{5, 1});
  CHECK(p.free_after_clear == 2);
}

TEST_CASE("blocking bound") {
  CHECK(bx_bound(lanes({3, 3}, {{5, 3, 1}, {4}})) == 0);
  CHECK(bx_bound(lanes({3, 3}, {{2, 5, 1}, {3}})) == 2);
  const auto c = lanes({3, 3, 3}, {{2, 5}, {}, {1}});
  const int before = bx_bound(c);
  for (const Move& m : legal_moves(c)) {
    if (m.from_lane != 0) continue;
    CHECK(bx_bound(apply_move(c, m)) == before - 1 + (m.to_lane == 2));
  }
  // Moving the 5 onto an empty lane resolves it and creates nothing new.
  CHECK(bx_bound(apply_move(c, legal_moves(c)[0])) == before - 1);
}

TEST_CASE("supply and demand aggregates") {
  const auto c = lanes({3, 2, 2}, {{2, 5, 1}, {3}, {}});
  const auto aux = supply_demand(c);
  CHECK(aux.blocking == 2);
  CHECK(aux.demand[5] == 1);
  CHECK(aux.demand[1] == 1);
  CHECK(aux.supply[2] == 2);
  CHECK(aux.supply[3] == 1);
  CHECK(aux.supply[5] == 2);
  for (int g = 1; g < aux.groups; ++g) {
    CHECK(aux.cum_demand[g] >= aux.cum_demand[g + 1]);
    CHECK(aux.cum_supply[g] >= aux.cum_supply[g + 1]);
    CHECK(aux.surplus[g] == aux.cum_demand[g] - aux.cum_supply[g]);
  }
}

TEST_CASE("GX examples") {
  const auto free = lanes({3, 3}, {{2, 5, 1}, {}});
  CHECK_FALSE(supply_demand(free).has_surplus());
  CHECK(gx_bound(supply_demand(free), free).moves == 0);

  const auto c = lanes({1, 3}, {{1}, {3, 5}});
  CHECK(supply_demand(c).has_surplus());
  CHECK(oracle::brute_force_gx(c) == 1);
  const auto gx = gx_bound(supply_demand(c), c);
  CHECK(gx.feasible);
  CHECK(gx.exact);
  CHECK(gx.moves == 1);
  CHECK(lb(c).h == 2);
}

TEST_CASE("GX equals exhaustive covering search") {
  std::mt19937_64 rng(2024);
  int with_gx = 0;
  for (int n = 0; n < 3000; ++n) {
    const int L = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<int> caps(L);
    for (auto& cap : caps) cap = std::uniform_int_distribution<int>(1, 4)(rng);
    int room = 0;
    for (int cap : caps) room += cap;
    const int G = std::uniform_int_distribution<int>(2, 6)(rng);
    auto c = oracle::random_lanes(rng, caps, G,
                                  std::uniform_int_distribution<int>(room / 2, room)(rng));
    const auto r = gx_bound(supply_demand(c), c);
    REQUIRE(r.feasible);
    REQUIRE(r.exact);
    REQUIRE(r.moves == oracle::brute_force_gx(c));
    with_gx += r.moves > 0;
  }
  CHECK(with_gx > 100);
}

TEST_CASE("bound is admissible on small states") {
  std::mt19937_64 rng(77);
  int tight = 0;
  for (int n = 0; n < 300; ++n) {
    const auto c = oracle::random_lanes(rng, {3, 3, 2, 2, 1}, 5, 6);
    const LowerBound h = lb(c);
    REQUIRE(h.feasible);
    REQUIRE(h.h == h.bx + h.gx);
    const int k = brute_force_optimum(c, 8).k;
    REQUIRE(h.h <= k);
    tight += h.h == k;
  }
  CHECK(tight > 150);
  const auto c = lanes({3, 2, 2}, {{2, 5, 1}, {3}, {}});
  CHECK(lb(c).h <= brute_force_optimum(c, 8).k);
}

TEST_CASE("zero bound exactly for sorted states") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 1000; ++n) {
    const auto c = oracle::random_lanes(rng, {2, 3, 3}, 4, 5);
    REQUIRE((lb(c).h == 0) == (c.blocking_total() == 0));
  }
}

TEST_CASE("an extra empty lane never raises the bound") {
  std::mt19937_64 rng(6);
  for (int n = 0; n < 500; ++n) {
    const std::vector<int> caps{3, 2, 3, 1};
    const auto c = oracle::random_lanes(rng, caps, 5, 7);
    auto contents = c.to_vectors();
    contents.emplace_back();
    auto caps2 = caps;
    caps2.push_back(std::uniform_int_distribution<int>(1, 3)(rng));
    const LaneConfiguration wider(LaneSet::from_capacities(caps2, 5), contents);
    REQUIRE(lb(wider).h <= lb(c).h);
  }
}

TEST_CASE("incremental bound equals the bound from scratch along random walks") {
  std::mt19937_64 rng(13);
  for (int walk = 0; walk < 10; ++walk) {
    auto c = oracle::random_lanes(rng, {3, 3, 3, 2, 2, 1, 4}, 6, 12);
    LowerBound bound = lb(c);
    for (int step = 0; step < 1000; ++step) {
      const auto moves = legal_moves(c);
      REQUIRE_FALSE(moves.empty());
      const Move m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      auto next = apply_move(c, m);
      const LowerBound inc = lb_incremental(bound, c, next, m);
      const LowerBound full = lb(next);
      REQUIRE(inc.h == full.h);
      REQUIRE(inc.bx == full.bx);
      REQUIRE(inc.gx == full.gx);
      REQUIRE(inc.aux == full.aux);
      bound = inc;
      c = std::move(next);
    }
  }
}

TEST_CASE("a move leaves untouched groups' surplus alone") {
  // Lanes 0 and 1 only hold groups 1 and 2, far below the other lanes' thresholds.
  const auto c = lanes({2, 2, 3, 3}, {{1, 2}, {}, {5, 4}, {5}});
  const LowerBound b = lb(c);
  const Move m = legal_moves(c)[0];
  REQUIRE(m.to_lane == 1);
  const auto next = apply_move(c, m);
  const LowerBound n = lb_incremental(b, c, next, m);
  for (int g = 3; g <= 5; ++g) CHECK(n.aux.demand[g] == b.aux.demand[g]);
}
