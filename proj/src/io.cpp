#include "marshal/io.hpp"

#include <fstream>
#include <sstream>

#include "marshal/generator.hpp"

namespace marshal {

namespace {

std::pair<int, int> parse_label(const std::string& label) {
  const auto x = label.find('x');
  if (x == std::string::npos) throw InvalidInstance("layout label must look like 3x3: " + label);
  try {
    return {std::stoi(label.substr(0, x)), std::stoi(label.substr(x + 1))};
  } catch (const std::exception&) {
    throw InvalidInstance("layout label must look like 3x3: " + label);
  }
}

Json stats_to_json(const SolveStats& s) {
  Json j;
  j["nodes_evaluated"] = s.nodes_evaluated;
  j["wall_time_s"] = s.wall_time_s;
  j["preprocessing_s"] = s.preprocessing_s;
  j["optimal_moves"] = s.optimal_moves;
  j["optimal_distance"] = s.optimal_distance;
  j["root_lower_bound"] = s.root_lower_bound;
  j["final_depth"] = s.final_depth;
  return j;
}

SolveStats stats_from_json(const Json& j) {
  SolveStats s;
  s.nodes_evaluated = j.value("nodes_evaluated", std::uint64_t{0});
  s.wall_time_s = j.value("wall_time_s", 0.0);
  s.preprocessing_s = j.value("preprocessing_s", 0.0);
  s.optimal_moves = j.value("optimal_moves", false);
  s.optimal_distance = j.value("optimal_distance", false);
  s.root_lower_bound = j.value("root_lower_bound", 0);
  s.final_depth = j.value("final_depth", 0);
  return s;
}

SolveStatus status_from_name(const std::string& name) {
  if (name == "solved") return SolveStatus::Solved;
  if (name == "timeout") return SolveStatus::TimedOut;
  if (name == "infeasible") return SolveStatus::Infeasible;
  throw std::invalid_argument("unknown solution status: " + name);
}

}  // namespace

Json instance_to_json(const WarehouseInstance& inst) {
  Json doc;
  doc["meta"] = {{"seed", inst.meta.seed},
                 {"fill", inst.meta.fill},
                 {"classes", inst.meta.classes},
                 {"bay_layout", inst.meta.bay_layout},
                 {"warehouse_layout", layout_label(inst.warehouse_cols, inst.warehouse_rows)},
                 {"generator", inst.meta.generator}};
  Json bays = Json::array();
  for (const auto& bay : inst.bays) {
    Json b;
    b["I"] = bay.columns;
    b["J"] = bay.rows;
    b["T"] = bay.tiers;
    b["G"] = bay.groups;
    b["access_sides"] = bay.access_sides.letters();
    Json loads = Json::array();
    for (int t = 0; t < bay.tiers; ++t)
      for (int j = 0; j < bay.rows; ++j)
        for (int i = 0; i < bay.columns; ++i)
          if (bay.at(i, j, t) != kEmpty)
            loads.push_back({{"i", i + 1}, {"j", j + 1}, {"t", t + 1}, {"g", bay.at(i, j, t)}});
    b["loads"] = std::move(loads);
    bays.push_back(std::move(b));
  }
  doc["bays"] = std::move(bays);
  return doc;
}

WarehouseInstance instance_from_json(const Json& doc) {
  WarehouseInstance inst;
  try {
    const Json& meta = doc.at("meta");
    inst.meta.seed = meta.value("seed", std::uint64_t{0});
    inst.meta.fill = meta.value("fill", 0.0);
    inst.meta.classes = meta.value("classes", 0);
    inst.meta.bay_layout = meta.value("bay_layout", std::string{});
    inst.meta.warehouse_layout = meta.value("warehouse_layout", std::string{});
    inst.meta.generator = meta.value("generator", std::string{});
    for (const Json& b : doc.at("bays")) {
      BaySpec bay(b.at("I").get<int>(), b.at("J").get<int>(), b.at("G").get<int>(),
                  SideSet::parse(b.value("access_sides", std::string("NESW"))),
                  b.value("T", 1));
      if (bay.columns <= 0 || bay.rows <= 0 || bay.tiers <= 0)
        throw InvalidInstance("bay dimensions must be positive");
      for (const Json& l : b.at("loads")) {
        const int i = l.at("i").get<int>() - 1;
        const int j = l.at("j").get<int>() - 1;
        const int t = l.value("t", 1) - 1;
        const int g = l.at("g").get<int>();
        if (i < 0 || j < 0 || t < 0 || i >= bay.columns || j >= bay.rows || t >= bay.tiers)
          throw InvalidInstance("load position outside the bay");
        if (g < 1 || g > bay.groups) throw InvalidInstance("load group outside 1..G");
        if (bay.at(i, j, t) != kEmpty) throw InvalidInstance("two loads in one slot");
        bay.set(i, j, static_cast<Group>(g), t);
      }
      inst.bays.push_back(std::move(bay));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInstance(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidInstance(e.what());
  }
  if (!inst.meta.warehouse_layout.empty()) {
    const auto [cols, rows] = parse_label(inst.meta.warehouse_layout);
    inst.warehouse_cols = cols;
    inst.warehouse_rows = rows;
  } else {
    inst.warehouse_cols = static_cast<int>(inst.bays.size());
    inst.warehouse_rows = 1;
  }
  if (inst.warehouse_cols * inst.warehouse_rows != static_cast<int>(inst.bays.size()))
    throw InvalidInstance("bay count does not match warehouse_layout");
  inst.validate();
  return inst;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

WarehouseInstance read_instance(const std::string& path) {
  return instance_from_json(read_json(path));
}

void write_instance(const std::string& path, const WarehouseInstance& instance) {
  write_json(path, instance_to_json(instance));
}

SolutionDocument make_document(std::string algo, const Solution& solution,
                               const std::vector<AccessAssignment>& assignments,
                               const LaneConfiguration& lanes) {
  SolutionDocument doc;
  doc.algo = std::move(algo);
  doc.solution = solution;
  for (const auto& a : assignments) doc.assignments.push_back(a.rows_as_strings());
  doc.lane_depth = lanes.lane_set().lane_depth();
  for (const Move& m : solution.moves)
    doc.access_points.emplace_back(lanes.lane_set().lane(m.from_lane).access_point,
                                   lanes.lane_set().lane(m.to_lane).access_point);
  return doc;
}

Json solution_to_json(const SolutionDocument& doc) {
  Json j;
  j["algo"] = doc.algo;
  j["status"] = status_name(doc.solution.status);
  j["k"] = doc.solution.k;
  j["total_distance"] = doc.solution.total_distance;
  Json moves = Json::array();
  for (std::size_t n = 0; n < doc.solution.moves.size(); ++n) {
    const Move& m = doc.solution.moves[n];
    Json mj;
    mj["from_lane"] = m.from_lane + 1;
    mj["to_lane"] = m.to_lane + 1;
    if (n < doc.access_points.size()) {
      mj["from_access_point"] = doc.access_points[n].first + 1;
      mj["to_access_point"] = doc.access_points[n].second + 1;
    }
    mj["distance"] = m.distance;
    moves.push_back(std::move(mj));
  }
  j["moves"] = std::move(moves);
  j["stats"] = stats_to_json(doc.solution.stats);
  j["assignments"] = doc.assignments;
  j["lane_depth"] = doc.lane_depth;
  return j;
}

SolutionDocument solution_from_json(const Json& j) {
  SolutionDocument doc;
  try {
    doc.algo = j.value("algo", std::string{});
    doc.solution.status = status_from_name(j.value("status", std::string("solved")));
    doc.solution.k = j.at("k").get<int>();
    doc.solution.total_distance = j.at("total_distance").get<int>();
    bool all_points = true;
    for (const Json& mj : j.at("moves")) {
      Move m;
      m.from_lane = mj.at("from_lane").get<int>() - 1;
      m.to_lane = mj.at("to_lane").get<int>() - 1;
      m.distance = mj.at("distance").get<int>();
      doc.solution.moves.push_back(m);
      if (mj.contains("from_access_point") && mj.contains("to_access_point"))
        doc.access_points.emplace_back(mj["from_access_point"].get<int>() - 1,
                                       mj["to_access_point"].get<int>() - 1);
      else
        all_points = false;
    }
    if (!all_points) doc.access_points.clear();
    if (j.contains("stats")) doc.solution.stats = stats_from_json(j["stats"]);
    doc.assignments = j.value("assignments", std::vector<std::vector<std::string>>{});
    doc.lane_depth = j.value("lane_depth", false);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed solution: ") + e.what());
  }
  return doc;
}

SolutionDocument read_solution(const std::string& path) {
  return solution_from_json(read_json(path));
}

void write_solution(const std::string& path, const SolutionDocument& doc) {
  write_json(path, solution_to_json(doc));
}

std::vector<AccessAssignment> assignments_from_rows(
    const WarehouseInstance& instance, const std::vector<std::vector<std::string>>& rows) {
  if (rows.size() != instance.bays.size())
    throw std::invalid_argument("need one assignment per bay");
  std::vector<AccessAssignment> out;
  for (std::size_t b = 0; b < rows.size(); ++b) {
    const BaySpec& bay = instance.bays[b];
    if (static_cast<int>(rows[b].size()) != bay.rows)
      throw std::invalid_argument("assignment row count differs from bay " + std::to_string(b + 1));
    std::vector<Side> dirs;
    for (const auto& row : rows[b]) {
      if (static_cast<int>(row.size()) != bay.columns)
        throw std::invalid_argument("assignment row length differs from bay " +
                                    std::to_string(b + 1));
      for (char c : row) dirs.push_back(side_from_letter(c));
    }
    out.push_back(make_assignment(bay, std::move(dirs)));
  }
  return out;
}

Json report_to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid();
  j["violations"] = r.violations;
  j["claimed_k"] = r.claimed_k;
  j["claimed_distance"] = r.claimed_distance;
  j["replayed_k"] = r.replayed_k;
  j["replayed_distance"] = r.replayed_distance;
  j["final_blocking"] = r.final_blocking;
  return j;
}

}  // namespace marshal
