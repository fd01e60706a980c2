#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vamci/core/error.hpp"
#include "vamci/core/matrix.hpp"
#include "vamci/core/model.hpp"

namespace vamci::learn {

enum class ModelKind {
  decision_tree,    // classifier
  random_forest,    // classifier
  knn,              // classifier
  linear_svm,       // classifier
  ridge,            // regressor
  regression_tree,  // regressor
  svr,              // regressor
};

bool is_classifier(ModelKind kind);

// Stable tag used in model files ("decision_tree", "linear_svm", ...).
std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view tag);

// Short report names: DT, RF, KNN, SVM, LRR, DT, SVR.
std::string_view display_name(ModelKind kind);
// Config names: classifiers "dt", "rf", "knn", "svm"; regressors "lrr" (or "ridge"), "dt", "svr".
std::optional<ModelKind> parse_classifier(std::string_view name);
std::optional<ModelKind> parse_regressor(std::string_view name);

enum class LearnerErrc {
  empty_dataset,
  single_class,
  invalid_hyperparameter,
  dimension_mismatch,
  non_finite_value,
  wrong_model_kind,
};

class LearnerError : public ValidationError {
 public:
  LearnerError(LearnerErrc code, const std::string& message);
  LearnerErrc code() const { return code_; }

 private:
  LearnerErrc code_;
};

// One flat parameter record; each learner reads only its own fields.
struct Hyperparams {
  std::optional<int> max_depth;     // DT, RF; nullopt = unlimited
  int min_samples_split = 2;        // DT, RF
  int n_trees = 100;                // RF
  std::optional<int> max_features;  // RF; nullopt = ceil(sqrt(d))
  bool bootstrap = true;            // RF
  int k = 5;                        // KNN
  double c = 1.0;                   // SVM, SVR
  double tol = 1e-4;                // SVM, SVR (maximal KKT violation at exit)
  int max_iter = 10000;             // SVM, SVR
  double lambda = 1.0;              // ridge
  double epsilon = 0.1;             // SVR

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

// Throws LearnerError(invalid_hyperparameter) if a field the kind uses is out of domain.
void validate(ModelKind kind, const Hyperparams& hp);

// Inner-loop search grids: DT/RF max_depth {3,5,10,inf}; KNN k {3,5,7,9};
// SVM/SVR C {0.01,0.1,1,10}; ridge lambda {0.01,0.1,1,10}.
std::vector<Hyperparams> default_grid(ModelKind kind);
// The hyperparameter the default grid sweeps ("max_depth", "k", "C" or "lambda").
std::string_view grid_parameter(ModelKind kind);

// Only the fields relevant to `kind`, e.g. {"max_depth": null, "min_samples_split": 2}.
nlohmann::ordered_json hyperparams_to_json(ModelKind kind, const Hyperparams& hp);
// Starts from defaults and overrides the keys present; unknown keys raise ParseError.
Hyperparams hyperparams_from_json(ModelKind kind, const nlohmann::json& j);

struct ClassificationData {
  Matrix x;
  std::vector<Diagnosis> y;
  std::vector<std::string> groups;  // participant ids (used by cross-validation only)
};

struct RegressionData {
  Matrix x;
  std::vector<double> y;
  std::vector<std::string> groups;
  std::vector<Diagnosis> strata;  // optional; diagnosis per row for stratified folds
};

// Shape and finiteness checks shared by every trainer.
void check_dataset(const Matrix& x, std::size_t n_targets);

}  // namespace vamci::learn
