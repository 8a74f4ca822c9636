#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "marshal/layout.hpp"
#include "oracles.hpp"

using namespace marshal;

namespace {

WarehouseInstance grid(int bay_i, int bay_j, int rows, int cols, SideSet sides = SideSet::all()) {
  WarehouseInstance w;
  w.warehouse_rows = rows;
  w.warehouse_cols = cols;
  for (int b = 0; b < rows * cols; ++b) w.bays.emplace_back(bay_i, bay_j, 5, sides);
  return w;
}

}  // namespace

TEST_CASE("single bay geometry") {
  const auto layout = build_layout(grid(3, 3, 1, 1));
  CHECK(layout.width() == 5);
  CHECK(layout.length() == 5);
  CHECK(layout.access_points().size() == 12);
  int aisle = 0;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) aisle += layout.is_aisle(x, y);
  CHECK(aisle == 16);
  CHECK(layout.bay_origin(0) == std::pair(1, 1));
}

TEST_CASE("access points sit on aisles next to their stack") {
  const auto inst = grid(3, 3, 2, 2);
  const auto layout = build_layout(inst);
  CHECK(layout.access_points().size() == 48);
  for (const auto& p : layout.access_points()) {
    CHECK(layout.is_aisle(p.x, p.y));
    auto [ox, oy] = layout.bay_origin(p.bay);
    const int sx = ox + p.stack.i, sy = oy + p.stack.j;
    CHECK(std::abs(sx - p.x) + std::abs(sy - p.y) == 1);
    const Tile& t = layout.tile(sx, sy);
    CHECK(t.kind == Tile::Kind::Storage);
    CHECK(t.bay == p.bay);
    CHECK(layout.access_point_for(p.bay, p.side, p.stack) == p.id);
  }
}

TEST_CASE("restricted sides produce fewer access points") {
  const auto layout = build_layout(grid(3, 2, 1, 1, SideSet::parse("EW")));
  CHECK(layout.access_points().size() == 4);
}

TEST_CASE("distances along a straight aisle") {
  const auto layout = build_layout(grid(3, 3, 1, 1));
  const auto d = all_pairs_distances(layout);
  for (int p = 0; p < d.size(); ++p) CHECK(d(p, p) == 0);
  // North points of columns 0 and 2 share the aisle row.
  CHECK(d(0, 2) == 2);
  CHECK(d(9, 11) == 2);
  CHECK(d(0, 9) == 2);
  const auto wide = all_pairs_distances(build_layout(grid(4, 1, 1, 1)));
  CHECK(wide(0, 3) == 3);
}

TEST_CASE("neighbouring bays share an aisle tile") {
  const auto inst = grid(3, 3, 1, 2);
  const auto layout = build_layout(inst);
  const auto d = all_pairs_distances(layout);
  const int east = layout.access_point_for(0, Side::East, {2, 1});
  const int west = layout.access_point_for(1, Side::West, {0, 1});
  CHECK(d(east, west) == 0);
}

TEST_CASE("BFS matches Floyd-Warshall and is a metric") {
  for (int b = 1; b <= 3; ++b)
    for (int r = 1; r <= 3; ++r)
      for (int c = 1; c <= 3; ++c) {
        const auto inst = grid(b, b, r, c);
        const auto d = all_pairs_distances(build_layout(inst));
        REQUIRE(d.data() == oracle::floyd_warshall_access_distances(inst));
        const int n = d.size();
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) {
            REQUIRE(d(p, q) == d(q, p));
            for (int m = 0; m < n; ++m) REQUIRE(d(p, q) <= d(p, m) + d(m, q));
          }
      }
}

TEST_CASE("distance CSV") {
  const auto d = all_pairs_distances(build_layout(grid(1, 1, 1, 1)));
  std::ostringstream os;
  write_distance_csv(os, d);
  CHECK(os.str() == "ap,1,2,3,4\n1,0,2,4,2\n2,2,0,2,4\n3,4,2,0,2\n4,2,4,2,0\n");
}

TEST_CASE("invalid instances are layout errors") {
  auto inst = grid(3, 3, 1, 2);
  inst.bays.pop_back();
  CHECK_THROWS_AS(build_layout(inst), LayoutError);
}
