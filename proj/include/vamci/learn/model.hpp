#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vamci/learn/forest.hpp"
#include "vamci/learn/hyperparams.hpp"
#include "vamci/learn/knn.hpp"
#include "vamci/learn/linear.hpp"
#include "vamci/learn/standardize.hpp"
#include "vamci/learn/tree.hpp"

namespace vamci::learn {

using ModelParams = std::variant<TreeModel, ForestModel, KnnModel, LinearModel>;

struct TrainedModel {
  ModelKind kind = ModelKind::decision_tree;
  Hyperparams hp;
  std::uint64_t seed = 0;
  std::size_t n_features = 0;
  std::optional<Standardizer> standardizer;  // KNN, SVM, SVR, ridge
  ModelParams params;

  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

// Classification targets as used internally: MCI -> 1.0, HC -> 0.0.
std::vector<double> class_targets(const std::vector<Diagnosis>& y);

TrainedModel train_decision_tree(const ClassificationData& data, const Hyperparams& hp);
TrainedModel train_random_forest(const ClassificationData& data, const Hyperparams& hp, std::uint64_t seed);
TrainedModel train_knn(const ClassificationData& data, const Hyperparams& hp);
// MCI is the +1 side of the margin. The solver is deterministic; `seed` is recorded only.
TrainedModel train_linear_svm(const ClassificationData& data, const Hyperparams& hp, std::uint64_t seed,
                              SolverTrace* trace = nullptr);

TrainedModel train_ridge(const RegressionData& data, const Hyperparams& hp);
TrainedModel train_regression_tree(const RegressionData& data, const Hyperparams& hp);
TrainedModel train_svr(const RegressionData& data, const Hyperparams& hp, std::uint64_t seed,
                       SolverTrace* trace = nullptr);

TrainedModel train_classifier(ModelKind kind, const ClassificationData& data, const Hyperparams& hp,
                              std::uint64_t seed);
TrainedModel train_regressor(ModelKind kind, const RegressionData& data, const Hyperparams& hp,
                             std::uint64_t seed);

// Both throw LearnerError(dimension_mismatch) if x has the wrong width and
// LearnerError(wrong_model_kind) when called on the other model family.
std::vector<Diagnosis> predict_labels(const TrainedModel& model, const Matrix& x);
std::vector<double> predict_values(const TrainedModel& model, const Matrix& x);

// Ridge coefficients mapped back to raw feature units: y = w.x + b.
LinearModel ridge_coefficients(const TrainedModel& model);

nlohmann::ordered_json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);
void save_model(const std::filesystem::path& path, const TrainedModel& model);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace vamci::learn
