// marshal: generate, solve, verify and benchmark unit-load pre-marshalling instances.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "marshal/bench.hpp"

using namespace marshal;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kTimeout = 2;
constexpr int kInvalid = 3;

std::pair<int, int> dims(const std::string& label) {
  const auto x = label.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("layout", "expected AxB, got " + label);
  return {std::stoi(label.substr(0, x)), std::stoi(label.substr(x + 1))};
}

std::string summary_path(const std::string& out) {
  const auto dot = out.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == out.size()) return out.substr(0, dot) + "_summary.csv";
  return out + ".summary.csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pre-marshalling of unit loads in multi-bay warehouses"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  std::string bay = "3x3", warehouse = "2x2", gen_out;
  GenConfig gc;
  gen->add_option("--bay", bay, "Bay layout IxJ")->capture_default_str();
  gen->add_option("--warehouse", warehouse, "Warehouse layout, bays per side")->capture_default_str();
  gen->add_option("--fill", gc.fill, "Occupied fraction of each bay")->capture_default_str();
  gen->add_option("--classes", gc.classes, "Priority groups G")->capture_default_str();
  gen->add_option("--seed", gc.seed, "RNG seed")->capture_default_str();
  gen->add_flag("--unrestricted", gc.unrestricted, "Allow configurations outside the benchmark grid");
  gen->add_option("-o,--out", gen_out, "Instance JSON")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  std::string algo = "astar", solve_in, solve_out, ub_from;
  double timeout_s = -1;
  bool lane_depth = false;
  int jobs = default_jobs();
  solve->add_option("--algo", algo, "astar or exact")
      ->check(CLI::IsMember({"astar", "exact"}))
      ->capture_default_str();
  solve->add_option("--timeout-s", timeout_s, "Time limit (default 600 for astar, 3600 for exact)");
  solve->add_option("--in", solve_in, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("-o,--out", solve_out, "Solution JSON")->required();
  solve->add_option("--ub-from", ub_from, "A* solution used as upper bound for exact")
      ->check(CLI::ExistingFile);
  solve->add_flag("--lane-depth", lane_depth, "Count in-lane travel over empty slots");
  solve->add_option("--jobs", jobs, "Bays fixed concurrently")->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "Replay a solution against its instance");
  std::string ver_in, ver_sol, ver_out;
  ver->add_option("--in", ver_in, "Instance JSON")->required()->check(CLI::ExistingFile);
  ver->add_option("--sol", ver_sol, "Solution JSON")->required()->check(CLI::ExistingFile);
  ver->add_option("-o,--out", ver_out, "Validation report JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  std::string suite_path, bench_out;
  int bench_jobs = 0;
  bench->add_option("--suite", suite_path, "Suite JSON")->required()->check(CLI::ExistingFile);
  bench->add_option("-o,--out", bench_out, "Results CSV")->required();
  bench->add_option("--jobs", bench_jobs, "Concurrent runs (default MARSHAL_JOBS or 1)");

  // distances
  auto* dist = app.add_subcommand("distances", "Write the access-point distance matrix");
  std::string dist_in, dist_out;
  dist->add_option("--in", dist_in, "Instance JSON")->required()->check(CLI::ExistingFile);
  dist->add_option("-o,--out", dist_out, "CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      std::tie(gc.bay_columns, gc.bay_rows) = dims(bay);
      std::tie(gc.warehouse_cols, gc.warehouse_rows) = dims(warehouse);
      write_instance(gen_out, generate(gc));
      return kOk;
    }

    if (*solve) {
      const WarehouseInstance inst = read_instance(solve_in);
      Prepared p = prepare(inst, lane_depth, jobs);
      AstarOptions ao;
      if (timeout_s > 0 && algo == "astar") ao.timeout_s = timeout_s;
      Solution sol;
      std::vector<AccessAssignment> used = p.assignments;
      if (algo == "astar") {
        sol = solve_astar(p.lanes, ao);
      } else {
        ExactOptions eo;
        if (timeout_s > 0) eo.timeout_s = timeout_s;
        Solution upper;
        if (!ub_from.empty()) {
          const SolutionDocument doc = read_solution(ub_from);
          if (!doc.assignments.empty()) {
            used = assignments_from_rows(inst, doc.assignments);
            p.lanes = to_virtual_lanes(inst, used, p.layout, p.distances, lane_depth);
          }
          upper = doc.solution;
          if (!replay(p.lanes, upper).valid()) {
            std::cerr << "upper-bound solution does not replay on this instance\n";
            return kInvalid;
          }
        } else {
          upper = solve_astar(p.lanes, ao);
        }
        if (upper.solved()) {
          sol = solve_exact(p.lanes, upper, eo);
        } else {
          sol.status = upper.status;
          sol.stats = upper.stats;
        }
      }
      sol.stats.preprocessing_s = p.preprocessing_s;
      write_solution(solve_out, make_document(algo, sol, used, p.lanes));
      std::cout << status_name(sol.status) << " k=" << sol.k << " distance=" << sol.total_distance
                << " nodes=" << sol.stats.nodes_evaluated << '\n';
      if (sol.status == SolveStatus::TimedOut) return kTimeout;
      return sol.solved() ? kOk : kInvalid;
    }

    if (*ver) {
      const WarehouseInstance inst = read_instance(ver_in);
      const SolutionDocument doc = read_solution(ver_sol);
      const auto assignments = doc.assignments.empty()
                                   ? fix_access_directions(inst)
                                   : assignments_from_rows(inst, doc.assignments);
      const ValidationReport report =
          replay(inst, assignments, doc.solution, doc.lane_depth,
                 doc.access_points.empty() ? nullptr : &doc.access_points);
      if (!ver_out.empty()) write_json(ver_out, report_to_json(report));
      if (report.valid()) {
        std::cout << "valid k=" << report.replayed_k << " distance=" << report.replayed_distance
                  << '\n';
        return kOk;
      }
      for (const auto& v : report.violations) std::cout << "violation: " << v << '\n';
      return kInvalid;
    }

    if (*bench) {
      SuiteConfig suite = suite_from_json(read_json(suite_path));
      if (bench_jobs > 0) suite.jobs = bench_jobs;
      const auto rows = run_suite(suite);
      std::ofstream out(bench_out);
      if (!out) throw std::runtime_error("cannot write " + bench_out);
      write_results_csv(out, rows);
      std::ofstream summary(summary_path(bench_out));
      write_summary_csv(summary, rows);
      int failed = 0;
      for (const auto& r : rows)
        if (r.status == "solved" && !r.valid) ++failed;
      std::cout << rows.size() << " rows written to " << bench_out << '\n';
      return failed ? kInvalid : kOk;
    }

    if (*dist) {
      const WarehouseInstance inst = read_instance(dist_in);
      std::ofstream out(dist_out);
      if (!out) throw std::runtime_error("cannot write " + dist_out);
      write_distance_csv(out, all_pairs_distances(build_layout(inst)));
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
