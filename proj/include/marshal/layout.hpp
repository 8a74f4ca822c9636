#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "marshal/model.hpp"

namespace marshal {

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedError : public LayoutError {
 public:
  DisconnectedError(const std::string& what, std::vector<std::pair<int, int>> pairs)
      : LayoutError(what), unreachable(std::move(pairs)) {}
  std::vector<std::pair<int, int>> unreachable;
};

struct Tile {
  enum class Kind : std::uint8_t { Aisle, Storage } kind = Kind::Aisle;
  int bay = -1;
  StackPos stack;
};

struct AccessPoint {
  int id = 0;
  int x = 0;
  int y = 0;
  int bay = 0;
  StackPos stack;  // boundary stack served
  Side side = Side::North;
};

/// Global tile map: bays on a rows x cols grid separated by one-tile aisles
/// that are shared between neighbours and wrap the whole warehouse.
class GridLayout {
 public:
  int width() const { return width_; }    // x extent
  int length() const { return length_; }  // y extent
  const Tile& tile(int x, int y) const { return tiles_[static_cast<std::size_t>(y) * width_ + x]; }
  bool is_aisle(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < length_ &&
           tile(x, y).kind == Tile::Kind::Aisle;
  }
  const std::vector<AccessPoint>& access_points() const { return points_; }
  /// Top-left tile of a bay's storage block.
  std::pair<int, int> bay_origin(int bay) const { return origins_[bay]; }
  /// Access point id serving `stack` of `bay` from `side`; -1 if none.
  int access_point_for(int bay, Side side, StackPos stack) const;

 private:
  friend GridLayout build_layout(const WarehouseInstance&);
  int width_ = 0;
  int length_ = 0;
  std::vector<Tile> tiles_;
  std::vector<AccessPoint> points_;
  std::vector<std::pair<int, int>> origins_;
};

GridLayout build_layout(const WarehouseInstance& instance);

/// Symmetric all-pairs access-point distances in tile steps.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<int> d) : n_(n), d_(std::move(d)) {}
  int size() const { return n_; }
  int operator()(int p, int q) const { return d_[static_cast<std::size_t>(p) * n_ + q]; }
  const std::vector<int>& data() const { return d_; }
  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<int> d_;
};

inline constexpr int kUnreachable = -1;

/// BFS over aisle tiles from every access point. Throws DisconnectedError if
/// any pair is unreachable.
DistanceMatrix all_pairs_distances(const GridLayout& layout);

/// CSV with 1-based access-point ids as row and column headers.
void write_distance_csv(std::ostream& out, const DistanceMatrix& d);

}  // namespace marshal
