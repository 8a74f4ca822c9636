#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "marshal/access.hpp"
#include "marshal/model.hpp"
#include "marshal/verify.hpp"

namespace marshal {

using Json = nlohmann::ordered_json;

/// Instance files use 1-based i, j, t; bays are listed row-major over the
/// warehouse grid given by meta.warehouse_layout ("cols x rows").
Json instance_to_json(const WarehouseInstance& instance);
/// Throws InvalidInstance on malformed documents.
WarehouseInstance instance_from_json(const Json& doc);

WarehouseInstance read_instance(const std::string& path);
void write_instance(const std::string& path, const WarehouseInstance& instance);

/// Everything needed to replay a plan: the access directions it was computed
/// under and the lane depth setting.
struct SolutionDocument {
  std::string algo;
  Solution solution;
  std::vector<std::vector<std::string>> assignments;  // per bay, one string per row
  bool lane_depth = false;
  std::vector<std::pair<int, int>> access_points;     // per move, 0-based
};

SolutionDocument make_document(std::string algo, const Solution& solution,
                               const std::vector<AccessAssignment>& assignments,
                               const LaneConfiguration& lanes);

/// Lanes and access points are written 1-based.
Json solution_to_json(const SolutionDocument& doc);
SolutionDocument solution_from_json(const Json& j);

SolutionDocument read_solution(const std::string& path);
void write_solution(const std::string& path, const SolutionDocument& doc);

std::vector<AccessAssignment> assignments_from_rows(
    const WarehouseInstance& instance, const std::vector<std::vector<std::string>>& rows);

Json report_to_json(const ValidationReport& report);

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

}  // namespace marshal
