#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vamci/core/model.hpp"
#include "vamci/eval/nested_cv.hpp"
#include "vamci/fusion/fusion.hpp"
#include "vamci/learn/hyperparams.hpp"

namespace vamci::cli {

struct ModelSpec {
  learn::ModelKind kind = learn::ModelKind::random_forest;
  std::string name;                       // as written in the config ("rf", "lrr", ...)
  nlohmann::ordered_json base;            // hyperparameter overrides shared by all grid points
  nlohmann::ordered_json grid_json;       // list of per-point overrides
  std::vector<learn::Hyperparams> grid;   // base + point, resolved
};

struct RunConfig {
  std::filesystem::path cohort;
  std::filesystem::path anchors;
  std::filesystem::path out;
  std::string cohort_text;   // as written, echoed in reports
  std::string anchors_text;
  std::optional<std::uint64_t> seed;
  std::vector<Task> tasks{Task::reading, Task::generation};
  std::vector<fusion::FeatureMode> modes;
  std::vector<ModelSpec> classifiers;
  std::vector<fusion::FeatureMode> regression_modes;
  std::vector<ModelSpec> regressors;
  std::vector<std::string> regression_targets;  // subdomain names and/or "total"
  eval::CvSettings cv;

  std::filesystem::path features_dir() const { return out / "features"; }
  std::filesystem::path reports_dir() const { return out / "reports"; }
  // Every mode either analysis needs, in canonical order.
  std::vector<fusion::FeatureMode> all_modes() const;
};

// Relative paths resolve against `base_dir`. Missing sections take defaults: both tasks,
// all seven modes, classifiers dt/rf/knn/svm, regression on FF4 with lrr/dt/svr over the
// six subdomains and the total, 10 rounds x 10 folds with 5 inner folds, positive class MCI.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig default_run_config();

// Builds a model spec from a config name, optional base overrides and optional grid.
ModelSpec make_model_spec(const std::string& name, bool classifier, const nlohmann::json& base,
                          const std::optional<nlohmann::json>& grid);

// Provenance block for reports: everything that determines results, nothing that does not
// (output location, job count).
nlohmann::ordered_json run_config_echo(const RunConfig& cfg);

double regression_target(const MocaScores& moca, const std::string& target);
bool is_regression_target(const std::string& target);

}  // namespace vamci::cli
