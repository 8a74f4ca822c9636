#include "marshal/layout.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>

namespace marshal {

namespace {

std::pair<int, int> neighbour_tile(int ox, int oy, const BaySpec& bay, Side side, StackPos s) {
  switch (side) {
    case Side::North: return {ox + s.i, oy - 1};
    case Side::South: return {ox + s.i, oy + bay.rows};
    case Side::West: return {ox - 1, oy + s.j};
    case Side::East: return {ox + bay.columns, oy + s.j};
  }
  return {0, 0};
}

}  // namespace

int GridLayout::access_point_for(int bay, Side side, StackPos stack) const {
  for (const auto& p : points_)
    if (p.bay == bay && p.side == side && p.stack == stack) return p.id;
  return -1;
}

GridLayout build_layout(const WarehouseInstance& instance) {
  try {
    instance.validate();
  } catch (const InvalidInstance& e) {
    throw LayoutError(std::string("invalid instance: ") + e.what());
  }
  const int rows = instance.warehouse_rows;
  const int cols = instance.warehouse_cols;

  std::vector<int> col_width(cols, 0), row_height(rows, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const auto& b = instance.bays[r * cols + c];
      col_width[c] = std::max(col_width[c], b.columns);
      row_height[r] = std::max(row_height[r], b.rows);
    }
  std::vector<int> x0(cols), y0(rows);
  int x = 1;
  for (int c = 0; c < cols; ++c) { x0[c] = x; x += col_width[c] + 1; }
  int y = 1;
  for (int r = 0; r < rows; ++r) { y0[r] = y; y += row_height[r] + 1; }

  GridLayout layout;
  layout.width_ = x;
  layout.length_ = y;
  layout.tiles_.assign(static_cast<std::size_t>(layout.width_) * layout.length_, Tile{});

  for (int b = 0; b < static_cast<int>(instance.bays.size()); ++b) {
    const auto& bay = instance.bays[b];
    const int ox = x0[b % cols], oy = y0[b / cols];
    layout.origins_.push_back({ox, oy});
    for (int j = 0; j < bay.rows; ++j)
      for (int i = 0; i < bay.columns; ++i) {
        Tile& t = layout.tiles_[static_cast<std::size_t>(oy + j) * layout.width_ + ox + i];
        if (t.kind == Tile::Kind::Storage) throw LayoutError("bays overlap");
        t = Tile{Tile::Kind::Storage, b, {i, j}};
      }
  }
  for (int b = 0; b < static_cast<int>(instance.bays.size()); ++b) {
    const auto& bay = instance.bays[b];
    auto [ox, oy] = layout.origins_[b];
    for (auto [side, stack] : bay.access_stacks()) {
      auto [px, py] = neighbour_tile(ox, oy, bay, side, stack);
      if (!layout.is_aisle(px, py)) throw LayoutError("access point is not on an aisle tile");
      layout.points_.push_back(
          {static_cast<int>(layout.points_.size()), px, py, b, stack, side});
    }
  }
  return layout;
}

DistanceMatrix all_pairs_distances(const GridLayout& layout) {
  const auto& pts = layout.access_points();
  const int n = static_cast<int>(pts.size());
  const int w = layout.width(), l = layout.length();
  std::vector<int> d(static_cast<std::size_t>(n) * n, kUnreachable);

  // Several access points may share one aisle tile; search once per tile.
  std::map<std::pair<int, int>, std::vector<int>> by_tile;
  for (const auto& p : pts) by_tile[{p.x, p.y}].push_back(p.id);

  std::vector<int> dist(static_cast<std::size_t>(w) * l);
  std::deque<int> queue;
  constexpr int dx[] = {1, -1, 0, 0};
  constexpr int dy[] = {0, 0, 1, -1};
  for (const auto& [tile, sources] : by_tile) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    const int start = tile.second * w + tile.first;
    dist[start] = 0;
    queue.assign(1, start);
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      const int cx = cur % w, cy = cur / w;
      for (int k = 0; k < 4; ++k) {
        const int nx = cx + dx[k], ny = cy + dy[k];
        if (!layout.is_aisle(nx, ny)) continue;
        const int nb = ny * w + nx;
        if (dist[nb] != kUnreachable) continue;
        dist[nb] = dist[cur] + 1;
        queue.push_back(nb);
      }
    }
    for (int p : sources)
      for (const auto& q : pts) d[static_cast<std::size_t>(p) * n + q.id] = dist[q.y * w + q.x];
  }

  std::vector<std::pair<int, int>> missing;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (d[static_cast<std::size_t>(p) * n + q] == kUnreachable) missing.push_back({p, q});
  if (!missing.empty())
    throw DisconnectedError("aisle graph is disconnected: " + std::to_string(missing.size()) +
                                " access-point pairs unreachable",
                            std::move(missing));
  return DistanceMatrix(n, std::move(d));
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  out << "ap";
  for (int q = 0; q < d.size(); ++q) out << ',' << q + 1;
  out << '\n';
  for (int p = 0; p < d.size(); ++p) {
    out << p + 1;
    for (int q = 0; q < d.size(); ++q) out << ',' << d(p, q);
    out << '\n';
  }
}

}  // namespace marshal
