#include "marshal/generator.hpp"

#include <cmath>
#include <sstream>

#include "marshal/access.hpp"

namespace marshal {

namespace {

int max_warehouse_for_bay(int bay) {
  switch (bay) {
    case 3: return 12;
    case 4: return 8;
    case 5: return 6;
    case 6: return 6;
    default: return 0;
  }
}

bool is_benchmark_fill(double fill) {
  for (double f : {0.4, 0.6, 0.8, 0.9})
    if (std::abs(fill - f) < 1e-9) return true;
  return false;
}

enum Stream : std::uint64_t { kOccupancy = 1, kGroups = 2 };

std::uint64_t sub_seed(std::uint64_t seed, Stream stream, int bay, int attempt) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ static_cast<std::uint64_t>(stream));
  x = splitmix64(x ^ (static_cast<std::uint64_t>(bay) << 20 | static_cast<std::uint64_t>(attempt)));
  return x;
}

struct Growth {
  Side side;
  int line;  // column for N/S, row for E/W
  int length = 0;
};

StackPos growth_cell(const BaySpec& bay, const Growth& g, int step) {
  switch (g.side) {
    case Side::North: return {g.line, step};
    case Side::South: return {g.line, bay.rows - 1 - step};
    case Side::West: return {step, g.line};
    case Side::East: return {bay.columns - 1 - step, g.line};
  }
  return {};
}

int growth_extent(const BaySpec& bay, const Growth& g) {
  return (g.side == Side::North || g.side == Side::South) ? bay.rows : bay.columns;
}

bool assignable(const BaySpec& bay) {
  try {
    optimal_assignments(bay, 1);
    return true;
  } catch (const InfeasibleAssignment&) {
    return false;
  }
}

// Marks `target` cells with group 1, only taking steps after which the bay is
// still assignable; false if every lane got stuck first.
bool grow_occupancy(BaySpec& bay, int target, std::mt19937_64& rng) {
  std::vector<Growth> lanes;
  for (Side s : kAllSides) {
    if (!bay.access_sides.has(s)) continue;
    const int lines = (s == Side::North || s == Side::South) ? bay.columns : bay.rows;
    for (int line = 0; line < lines; ++line) lanes.push_back({s, line, 0});
  }
  auto extendable = [&](const Growth& g) {
    if (g.length >= growth_extent(bay, g)) return false;
    const StackPos c = growth_cell(bay, g, g.length);
    return bay.at(c.i, c.j) == kEmpty;
  };
  for (int placed = 0; placed < target; ++placed) {
    std::vector<std::size_t> open;
    for (std::size_t l = 0; l < lanes.size(); ++l)
      if (extendable(lanes[l])) open.push_back(l);
    bool grown = false;
    while (!open.empty() && !grown) {
      const std::size_t pick = uniform_below(rng, open.size());
      Growth& g = lanes[open[pick]];
      const StackPos c = growth_cell(bay, g, g.length);
      bay.set(c.i, c.j, 1);
      if (assignable(bay)) {
        ++g.length;
        grown = true;
      } else {
        bay.set(c.i, c.j, kEmpty);
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    if (!grown) return false;
  }
  return true;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

std::string layout_label(int columns, int rows) {
  std::ostringstream os;
  os << columns << 'x' << rows;
  return os.str();
}

void validate_config(const GenConfig& c) {
  if (c.bay_columns <= 0 || c.bay_rows <= 0 || c.warehouse_rows <= 0 || c.warehouse_cols <= 0)
    throw std::invalid_argument("layout dimensions must be positive");
  if (c.tiers != 1) throw std::invalid_argument("only single-tier bays are supported");
  if (!(c.fill >= 0.0 && c.fill <= 1.0)) throw std::invalid_argument("fill must be in [0, 1]");
  if (c.classes < 1 || c.classes > 250) throw std::invalid_argument("classes must be in 1..250");
  if (c.access_sides.empty()) throw std::invalid_argument("at least one access side needed");
  if (c.unrestricted) return;
  if (c.bay_columns != c.bay_rows || c.warehouse_rows != c.warehouse_cols)
    throw std::invalid_argument("benchmark layouts are square (use unrestricted)");
  const int max_w = max_warehouse_for_bay(c.bay_columns);
  if (max_w == 0) throw std::invalid_argument("bay layout outside 3x3..6x6 (use unrestricted)");
  if (c.warehouse_rows < 2 || c.warehouse_rows > max_w)
    throw std::invalid_argument("warehouse layout not in the benchmark grid for this bay");
  if (!is_benchmark_fill(c.fill))
    throw std::invalid_argument("fill must be one of 0.4, 0.6, 0.8, 0.9 (use unrestricted)");
  if (c.classes != 5 && c.classes != 10)
    throw std::invalid_argument("classes must be 5 or 10 (use unrestricted)");
  if (c.access_sides != SideSet::all())
    throw std::invalid_argument("benchmark bays are accessible from all sides");
}

int target_load_count(const GenConfig& c) {
  return static_cast<int>(std::floor(c.fill * c.bay_columns * c.bay_rows + 0.5 + 1e-9));
}

int slot_count(const GenConfig& c) {
  return c.bay_columns * c.bay_rows * c.tiers * c.warehouse_rows * c.warehouse_cols;
}

WarehouseInstance generate(const GenConfig& config) {
  validate_config(config);
  WarehouseInstance inst;
  inst.warehouse_rows = config.warehouse_rows;
  inst.warehouse_cols = config.warehouse_cols;
  inst.meta.seed = config.seed;
  inst.meta.fill = config.fill;
  inst.meta.classes = config.classes;
  inst.meta.bay_layout = layout_label(config.bay_columns, config.bay_rows);
  inst.meta.warehouse_layout = layout_label(config.warehouse_cols, config.warehouse_rows);
  inst.meta.generator = kGeneratorName;

  const int target = target_load_count(config);
  const int bays = config.warehouse_rows * config.warehouse_cols;
  constexpr int kRetries = 100;
  for (int b = 0; b < bays; ++b) {
    BaySpec bay;
    bool ok = false;
    for (int attempt = 0; attempt <= kRetries && !ok; ++attempt) {
      bay = BaySpec(config.bay_columns, config.bay_rows, config.classes, config.access_sides);
      std::mt19937_64 rng(sub_seed(config.seed, kOccupancy, b, attempt));
      ok = grow_occupancy(bay, target, rng) && assignable(bay);
    }
    if (!ok) {
      std::ostringstream os;
      os << "no assignable occupancy for bay " << b << " after " << kRetries << " retries ("
         << inst.meta.bay_layout << ", fill " << config.fill << ", seed " << config.seed << ')';
      throw GenerationFailed(os.str());
    }
    std::mt19937_64 groups(sub_seed(config.seed, kGroups, b, 0));
    for (int j = 0; j < bay.rows; ++j)
      for (int i = 0; i < bay.columns; ++i)
        if (bay.at(i, j) != kEmpty)
          bay.set(i, j, static_cast<Group>(1 + uniform_below(groups, config.classes)));
    inst.bays.push_back(std::move(bay));
  }
  return inst;
}

}  // namespace marshal
