#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "marshal/model.hpp"

namespace marshal {

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenConfig {
  int bay_columns = 3;
  int bay_rows = 3;
  int warehouse_rows = 2;
  int warehouse_cols = 2;
  double fill = 0.4;
  int classes = 5;
  int tiers = 1;
  SideSet access_sides = SideSet::all();
  std::uint64_t seed = 1;
  bool unrestricted = false;  // allow combinations outside the benchmark grid
};

/// Name recorded in instance metadata.
inline constexpr const char* kGeneratorName = "lane-growth/mt19937_64/splitmix64";

/// Throws std::invalid_argument for a configuration outside the benchmark grid
/// (unless unrestricted) or with nonsensical values.
void validate_config(const GenConfig& config);

/// Loads per bay: fill * I * J rounded half-up.
int target_load_count(const GenConfig& config);

/// Slots over all bays.
int slot_count(const GenConfig& config);

/// Stateless 64-bit mixer used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform integer in [0, n) by rejection, identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Occupancy grows lane by lane from randomly chosen boundary stacks inward;
/// groups are drawn from a separate stream so that the same seed yields the
/// same occupied cells for every class count.
WarehouseInstance generate(const GenConfig& config);

/// "3x3" style label.
std::string layout_label(int columns, int rows);

}  // namespace marshal
