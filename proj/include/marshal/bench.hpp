#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "marshal/access.hpp"
#include "marshal/astar.hpp"
#include "marshal/exact.hpp"
#include "marshal/generator.hpp"
#include "marshal/io.hpp"
#include "marshal/layout.hpp"

namespace marshal {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

/// Mean chance that a load sits on top of a lower group, for groups 1..p drawn
/// uniformly; (p - 1) / (2p) in lowest terms. Throws DomainError for p < 1.
Rational blockage_likelihood(int p);

/// (d_astar - d_exact) / d_exact; empty when d_exact is 0.
std::optional<double> relative_gap(int d_astar, int d_exact);

/// Access fixing, layout, distances and lanes of one instance.
struct Prepared {
  WarehouseInstance instance;
  std::vector<AccessAssignment> assignments;
  GridLayout layout;
  DistanceMatrix distances;
  LaneConfiguration lanes;
  double preprocessing_s = 0.0;
};

Prepared prepare(const WarehouseInstance& instance, bool lane_depth = false, int jobs = 1,
                 int candidates = 10);

struct SuiteConfig {
  std::vector<GenConfig> configs;      // seed field ignored
  std::vector<std::uint64_t> seeds;
  bool run_astar = true;
  bool run_exact = true;
  AstarOptions astar;
  ExactOptions exact;
  bool lane_depth = false;
  int jobs = 1;
};

/// {"configs": [{"bay": "3x3", "warehouse": "2x2", "fill": 0.4, "classes": 5}],
///  "seeds": [1, 2] or {"from": 1, "to": 10}, "algos": ["astar", "exact"],
///  "timeout_s": {"astar": 600, "exact": 3600}, "lane_depth": false,
///  "unrestricted": false}
SuiteConfig suite_from_json(const Json& j);

struct RunRecord {
  std::string bay;
  std::string warehouse;
  double fill = 0.0;
  int classes = 0;
  std::uint64_t seed = 0;
  std::string algo;
  std::string status;  // solved, timeout, infeasible, error
  int k = 0;
  int distance = 0;
  std::uint64_t nodes = 0;
  double preprocessing_s = 0.0;
  double solve_s = 0.0;
  bool timed_out = false;
  bool optimal_moves = false;
  bool optimal_distance = false;
  bool valid = false;
  std::optional<double> gap;
  std::string error;
};

/// Rows ordered by (config, seed, algo) whatever the completion order.
std::vector<RunRecord> run_suite(const SuiteConfig& suite);

/// MARSHAL_JOBS if set and positive, else 1.
int default_jobs();

extern const char* const kResultColumns;

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& rows);

/// Per configuration: runs, solved counts, agreement of A* and exact distance,
/// mean loaded distance per move, mean relative gap.
void write_summary_csv(std::ostream& out, const std::vector<RunRecord>& rows);

}  // namespace marshal
