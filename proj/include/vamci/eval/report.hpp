#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vamci/eval/metrics.hpp"
#include "vamci/learn/hyperparams.hpp"

namespace vamci::eval {

struct ClassificationRow {
  std::string mode;  // feature set name, e.g. "FF1"
  learn::ModelKind model = learn::ModelKind::random_forest;
  ClassificationSummary summary;
  std::vector<std::size_t> selection_counts;  // trials that picked each grid point
};

struct RegressionRow {
  std::string mode;
  std::string target;  // subdomain name or "total"
  learn::ModelKind model = learn::ModelKind::ridge;
  RegressionSummary summary;
  std::vector<std::size_t> selection_counts;
};

struct TaskReport {
  std::string task;
  nlohmann::ordered_json config;  // run settings echoed for provenance, including the seed
  std::vector<ClassificationRow> classification;
  std::vector<RegressionRow> regression;
};

nlohmann::ordered_json report_to_json(const TaskReport& report);
// Throws ParseError on structurally invalid input.
TaskReport report_from_json(const nlohmann::json& j);

// Delimited tables, one row per model (classification) or per target x model (regression),
// with mean/best columns for every metric. Missing values print as NA.
std::string classification_table_csv(const TaskReport& report, std::string_view mode);
std::string regression_table_csv(const TaskReport& report, std::string_view mode);

// Long-format reading-vs-generation comparison over the union of rows in `reports`:
// kind,features,target,model,metric,reading,generation,delta. Tasks without a report, or
// rows absent from one task, print NA.
std::string comparison_csv(const std::vector<TaskReport>& reports);

std::string format_number(double v);

}  // namespace vamci::eval
