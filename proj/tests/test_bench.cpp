#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "marshal/bench.hpp"

using namespace marshal;

namespace {

// Drops preprocessing_s and solve_s (columns 11 and 12).
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (c != 10 && c != 11) out << cells[c] << ',';
    out << '\n';
  }
  return out.str();
}

SuiteConfig tiny_suite(int jobs) {
  return suite_from_json(Json::parse(R"({
    "configs": [{"bay": "3x3", "warehouse": "2x2", "fill": 0.9, "classes": 10},
                {"bay": "3x3", "warehouse": "2x2", "fill": 0.8, "classes": 5}],
    "seeds": {"from": 1, "to": 6},
    "algos": ["astar", "exact"],
    "timeout_s": {"astar": 60, "exact": 60},
    "jobs": )" + std::to_string(jobs) + "}"));
}

}  // namespace

TEST_CASE("blockage likelihood") {
  CHECK(blockage_likelihood(5) == Rational{2, 5});
  CHECK(blockage_likelihood(10) == Rational{9, 20});
  CHECK(blockage_likelihood(1) == Rational{0, 1});
  CHECK(blockage_likelihood(5).value() == doctest::Approx(0.40));
  CHECK_THROWS_AS(blockage_likelihood(0), DomainError);
  CHECK_THROWS_AS(blockage_likelihood(-3), DomainError);
  const Rational half{1, 2};
  for (int p = 2; p <= 10000; ++p) {
    REQUIRE(blockage_likelihood(p - 1) < blockage_likelihood(p));
    REQUIRE(blockage_likelihood(p) < half);
  }
}

TEST_CASE("relative gap") {
  CHECK(*relative_gap(12, 10) == doctest::Approx(0.2));
  CHECK(*relative_gap(10, 10) == 0.0);
  CHECK_FALSE(relative_gap(0, 0).has_value());
}

TEST_CASE("suite files") {
  const auto s = tiny_suite(2);
  CHECK(s.configs.size() == 2);
  CHECK(s.seeds == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
  CHECK(s.astar.timeout_s == 60);
  CHECK(s.jobs == 2);
  const auto only = suite_from_json(Json::parse(
      R"({"configs": [{"bay": "4x4", "warehouse": "3x3", "fill": 0.4, "classes": 5}],
          "seeds": [3, 9], "algos": ["astar"]})"));
  CHECK(only.run_astar);
  CHECK_FALSE(only.run_exact);
  CHECK(only.configs[0].warehouse_rows == 3);
  CHECK_THROWS(suite_from_json(Json::parse(
      R"({"configs": [{"bay": "3x3", "warehouse": "2x2", "fill": 0.5, "classes": 5}], "seeds": [1]})")));
  CHECK_NOTHROW(suite_from_json(Json::parse(
      R"({"configs": [{"bay": "3x3", "warehouse": "1x2", "fill": 0.5, "classes": 3}], "seeds": [1],
          "unrestricted": true})")));
  CHECK_THROWS(suite_from_json(Json::parse(
      R"({"configs": [{"bay": "3x3", "warehouse": "2x2", "fill": 0.4, "classes": 5}], "seeds": [1],
          "algos": ["greedy"]})")));
}

TEST_CASE("suite runs are reproducible and complete") {
  const auto rows = run_suite(tiny_suite(1));
  REQUIRE(rows.size() == 24);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    CHECK(rows[n].algo == (n % 2 == 0 ? "astar" : "exact"));
    CHECK(rows[n].status == "solved");
    CHECK(rows[n].valid);
    if (n % 2 == 1) {
      CHECK(rows[n].k == rows[n - 1].k);
      CHECK(rows[n].distance <= rows[n - 1].distance);
      CHECK(rows[n].optimal_distance);
    }
  }
  std::ostringstream a, b;
  write_results_csv(a, rows);
  write_results_csv(b, run_suite(tiny_suite(4)));
  CHECK(without_timing(a.str()) == without_timing(b.str()));
  CHECK(a.str().substr(0, a.str().find('\n')) == kResultColumns);

  std::ostringstream sa, sb;
  write_summary_csv(sa, rows);
  write_summary_csv(sb, rows);
  CHECK(sa.str() == sb.str());
  std::istringstream lines(sa.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(first.rfind("3x3,2x2,0.90,10,6,6,6,6,", 0) == 0);
}

TEST_CASE("results CSV formatting") {
  RunRecord r;
  r.bay = "3x3";
  r.warehouse = "2x2";
  r.fill = 0.6;
  r.classes = 5;
  r.seed = 4;
  r.algo = "exact";
  r.status = "error";
  r.error = "bad, \"worse\"";
  std::ostringstream os;
  write_results_csv(os, {r});
  CHECK(os.str() == std::string(kResultColumns) +
                        "\n3x3,2x2,0.60,5,4,exact,error,0,0,0,0.000000,0.000000,0,0,0,0,,"
                        "\"bad, \"\"worse\"\"\"\n");
}

TEST_CASE("instance and solution documents round trip") {
  GenConfig c;
  c.fill = 0.9;
  c.classes = 10;
  c.seed = 4;
  const auto inst = generate(c);
  const Json j = instance_to_json(inst);
  const auto back = instance_from_json(j);
  CHECK(instance_to_json(back).dump() == j.dump());
  CHECK(back.bays.size() == inst.bays.size());
  for (std::size_t b = 0; b < inst.bays.size(); ++b) CHECK(back.bays[b].occupancy == inst.bays[b].occupancy);

  const auto p = prepare(inst);
  const auto s = solve_astar(p.lanes);
  REQUIRE(s.solved());
  const auto doc = make_document("astar", s, p.assignments, p.lanes);
  const auto parsed = solution_from_json(solution_to_json(doc));
  CHECK(solution_to_json(parsed).dump() == solution_to_json(doc).dump());
  CHECK(parsed.solution.k == s.k);
  REQUIRE(parsed.solution.moves.size() == s.moves.size());
  for (std::size_t n = 0; n < s.moves.size(); ++n) {
    CHECK(parsed.solution.moves[n].from_lane == s.moves[n].from_lane);
    CHECK(parsed.solution.moves[n].to_lane == s.moves[n].to_lane);
    CHECK(parsed.solution.moves[n].distance == s.moves[n].distance);
  }
  const auto assignments = assignments_from_rows(inst, parsed.assignments);
  CHECK(replay(inst, assignments, parsed.solution, parsed.lane_depth, &parsed.access_points).valid());

  Json broken = j;
  broken["bays"][0]["loads"][0]["g"] = 99;
  CHECK_THROWS_AS(instance_from_json(broken), InvalidInstance);
  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"bays": 3})")), InvalidInstance);
}
