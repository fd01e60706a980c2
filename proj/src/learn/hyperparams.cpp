#include "vamci/learn/hyperparams.hpp"

#include <cmath>

namespace vamci::learn {

bool is_classifier(ModelKind kind) {
  return kind == ModelKind::decision_tree || kind == ModelKind::random_forest ||
         kind == ModelKind::knn || kind == ModelKind::linear_svm;
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::decision_tree: return "decision_tree";
    case ModelKind::random_forest: return "random_forest";
    case ModelKind::knn: return "knn";
    case ModelKind::linear_svm: return "linear_svm";
    case ModelKind::ridge: return "ridge";
    case ModelKind::regression_tree: return "regression_tree";
    case ModelKind::svr: return "svr";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view tag) {
  for (const auto k : {ModelKind::decision_tree, ModelKind::random_forest, ModelKind::knn,
                       ModelKind::linear_svm, ModelKind::ridge, ModelKind::regression_tree,
                       ModelKind::svr}) {
    if (to_string(k) == tag) return k;
  }
  return std::nullopt;
}

std::string_view display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::decision_tree: return "DT";
    case ModelKind::random_forest: return "RF";
    case ModelKind::knn: return "KNN";
    case ModelKind::linear_svm: return "SVM";
    case ModelKind::ridge: return "LRR";
    case ModelKind::regression_tree: return "DT";
    case ModelKind::svr: return "SVR";
  }
  return "?";
}

std::optional<ModelKind> parse_classifier(std::string_view name) {
  if (name == "dt" || name == "DT") return ModelKind::decision_tree;
  if (name == "rf" || name == "RF") return ModelKind::random_forest;
  if (name == "knn" || name == "KNN") return ModelKind::knn;
  if (name == "svm" || name == "SVM") return ModelKind::linear_svm;
  return std::nullopt;
}

std::optional<ModelKind> parse_regressor(std::string_view name) {
  if (name == "lrr" || name == "LRR" || name == "ridge") return ModelKind::ridge;
  if (name == "dt" || name == "DT") return ModelKind::regression_tree;
  if (name == "svr" || name == "SVR") return ModelKind::svr;
  return std::nullopt;
}

LearnerError::LearnerError(LearnerErrc code, const std::string& message)
    : ValidationError(message), code_(code) {}

namespace {

[[noreturn]] void bad(ModelKind kind, const std::string& what) {
  throw LearnerError(LearnerErrc::invalid_hyperparameter,
                     std::string(to_string(kind)) + ": invalid hyperparameter " + what);
}

void check_tree(ModelKind kind, const Hyperparams& hp) {
  if (hp.max_depth && *hp.max_depth < 1) bad(kind, "max_depth (must be >= 1 or unlimited)");
  if (hp.min_samples_split < 2) bad(kind, "min_samples_split (must be >= 2)");
}

void check_margin(ModelKind kind, const Hyperparams& hp) {
  if (!(hp.c > 0.0) || !std::isfinite(hp.c)) bad(kind, "C (must be > 0)");
  if (!(hp.tol > 0.0)) bad(kind, "tol (must be > 0)");
  if (hp.max_iter < 1) bad(kind, "max_iter (must be >= 1)");
}

}  // namespace

void validate(ModelKind kind, const Hyperparams& hp) {
  switch (kind) {
    case ModelKind::decision_tree:
    case ModelKind::regression_tree:
      check_tree(kind, hp);
      break;
    case ModelKind::random_forest:
      check_tree(kind, hp);
      if (hp.n_trees < 1) bad(kind, "n_trees (must be >= 1)");
      if (hp.max_features && *hp.max_features < 1) bad(kind, "max_features (must be >= 1)");
      break;
    case ModelKind::knn:
      if (hp.k < 1) bad(kind, "k (must be >= 1)");
      break;
    case ModelKind::linear_svm:
      check_margin(kind, hp);
      break;
    case ModelKind::svr:
      check_margin(kind, hp);
      if (!(hp.epsilon >= 0.0)) bad(kind, "epsilon (must be >= 0)");
      break;
    case ModelKind::ridge:
      if (!(hp.lambda >= 0.0) || !std::isfinite(hp.lambda)) bad(kind, "lambda (must be >= 0)");
      break;
  }
}

std::vector<Hyperparams> default_grid(ModelKind kind) {
  std::vector<Hyperparams> grid;
  switch (kind) {
    case ModelKind::decision_tree:
    case ModelKind::regression_tree:
    case ModelKind::random_forest:
      for (const std::optional<int> d : {std::optional<int>(3), std::optional<int>(5),
                                         std::optional<int>(10), std::optional<int>()}) {
        Hyperparams hp;
        hp.max_depth = d;
        grid.push_back(hp);
      }
      break;
    case ModelKind::knn:
      for (const int k : {3, 5, 7, 9}) {
        Hyperparams hp;
        hp.k = k;
        grid.push_back(hp);
      }
      break;
    case ModelKind::linear_svm:
    case ModelKind::svr:
      for (const double c : {0.01, 0.1, 1.0, 10.0}) {
        Hyperparams hp;
        hp.c = c;
        grid.push_back(hp);
      }
      break;
    case ModelKind::ridge:
      for (const double l : {0.01, 0.1, 1.0, 10.0}) {
        Hyperparams hp;
        hp.lambda = l;
        grid.push_back(hp);
      }
      break;
  }
  return grid;
}

std::string_view grid_parameter(ModelKind kind) {
  switch (kind) {
    case ModelKind::decision_tree:
    case ModelKind::regression_tree:
    case ModelKind::random_forest:
      return "max_depth";
    case ModelKind::knn:
      return "k";
    case ModelKind::linear_svm:
    case ModelKind::svr:
      return "C";
    case ModelKind::ridge:
      return "lambda";
  }
  return "";
}

nlohmann::ordered_json hyperparams_to_json(ModelKind kind, const Hyperparams& hp) {
  nlohmann::ordered_json j;
  const auto depth = hp.max_depth ? nlohmann::ordered_json(*hp.max_depth) : nlohmann::ordered_json(nullptr);
  switch (kind) {
    case ModelKind::decision_tree:
    case ModelKind::regression_tree:
      j["max_depth"] = depth;
      j["min_samples_split"] = hp.min_samples_split;
      break;
    case ModelKind::random_forest:
      j["n_trees"] = hp.n_trees;
      j["max_depth"] = depth;
      j["min_samples_split"] = hp.min_samples_split;
      j["max_features"] = hp.max_features ? nlohmann::ordered_json(*hp.max_features)
                                          : nlohmann::ordered_json(nullptr);
      j["bootstrap"] = hp.bootstrap;
      break;
    case ModelKind::knn:
      j["k"] = hp.k;
      break;
    case ModelKind::linear_svm:
      j["C"] = hp.c;
      j["tol"] = hp.tol;
      j["max_iter"] = hp.max_iter;
      break;
    case ModelKind::svr:
      j["C"] = hp.c;
      j["epsilon"] = hp.epsilon;
      j["tol"] = hp.tol;
      j["max_iter"] = hp.max_iter;
      break;
    case ModelKind::ridge:
      j["lambda"] = hp.lambda;
      break;
  }
  return j;
}

Hyperparams hyperparams_from_json(ModelKind kind, const nlohmann::json& j) {
  Hyperparams hp;
  if (!j.is_object()) throw ParseError("hyperparameters must be a JSON object");
  const auto known = hyperparams_to_json(kind, hp);
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) {
        throw ParseError(std::string(to_string(kind)) + ": unknown hyperparameter '" + key + "'");
      }
      if (key == "max_depth") {
        hp.max_depth = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
      } else if (key == "max_features") {
        hp.max_features = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
      } else if (key == "min_samples_split") {
        hp.min_samples_split = value.get<int>();
      } else if (key == "n_trees") {
        hp.n_trees = value.get<int>();
      } else if (key == "bootstrap") {
        hp.bootstrap = value.get<bool>();
      } else if (key == "k") {
        hp.k = value.get<int>();
      } else if (key == "C") {
        hp.c = value.get<double>();
      } else if (key == "tol") {
        hp.tol = value.get<double>();
      } else if (key == "max_iter") {
        hp.max_iter = value.get<int>();
      } else if (key == "lambda") {
        hp.lambda = value.get<double>();
      } else if (key == "epsilon") {
        hp.epsilon = value.get<double>();
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ParseError(std::string("hyperparameter type error: ") + e.what());
  }
  return hp;
}

void check_dataset(const Matrix& x, std::size_t n_targets) {
  if (x.rows() == 0) throw LearnerError(LearnerErrc::empty_dataset, "empty dataset");
  if (x.rows() != n_targets) {
    throw LearnerError(LearnerErrc::dimension_mismatch,
                       "dataset has " + std::to_string(x.rows()) + " rows but " +
                           std::to_string(n_targets) + " targets");
  }
  for (const auto v : x.data()) {
    if (!std::isfinite(v)) throw LearnerError(LearnerErrc::non_finite_value, "non-finite feature value");
  }
}

}  // namespace vamci::learn
