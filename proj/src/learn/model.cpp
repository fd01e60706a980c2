#include "vamci/learn/model.hpp"

#include <fstream>
#include <sstream>

namespace vamci::learn {
namespace {

using nlohmann::ordered_json;

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

void require_kind(ModelKind kind, bool classifier) {
  if (is_classifier(kind) != classifier) {
    throw LearnerError(LearnerErrc::wrong_model_kind,
                       std::string(to_string(kind)) + " is not a " + (classifier ? "classifier" : "regressor"));
  }
}

TrainedModel shell(ModelKind kind, const Hyperparams& hp, std::uint64_t seed, const Matrix& x) {
  validate(kind, hp);
  TrainedModel m;
  m.kind = kind;
  m.hp = hp;
  m.seed = seed;
  m.n_features = x.cols();
  return m;
}

void check_targets(std::span<const double> y) {
  for (const double v : y) {
    if (!std::isfinite(v)) throw LearnerError(LearnerErrc::non_finite_value, "non-finite regression target");
  }
}

TreeOptions tree_options(const Hyperparams& hp, SplitCriterion criterion) {
  TreeOptions o;
  o.criterion = criterion;
  o.max_depth = hp.max_depth;
  o.min_samples_split = hp.min_samples_split;
  return o;
}

Matrix prepared(const TrainedModel& model, const Matrix& x) {
  if (x.cols() != model.n_features) {
    throw LearnerError(LearnerErrc::dimension_mismatch,
                       std::string(to_string(model.kind)) + " expects " + std::to_string(model.n_features) +
                           " features, got " + std::to_string(x.cols()));
  }
  return model.standardizer ? model.standardizer->transform(x) : x;
}

std::vector<double> raw_outputs(const TrainedModel& model, const Matrix& x) {
  const Matrix z = prepared(model, x);
  std::vector<double> out(z.rows());
  std::visit(
      [&](const auto& p) {
        for (std::size_t r = 0; r < z.rows(); ++r) {
          if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LinearModel>) {
            out[r] = p.decision(z.row(r));
          } else {
            out[r] = p.predict(z.row(r));
          }
        }
      },
      model.params);
  return out;
}

// ---- serialization ----

ordered_json tree_to_json(const TreeModel& t) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value, n.samples});
  }
  return {{"n_features", t.n_features}, {"nodes", nodes}};
}

TreeModel tree_from_json(const nlohmann::json& j) {
  TreeModel t;
  t.n_features = j.at("n_features").get<std::size_t>();
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.value = n.at(4).get<double>();
    node.samples = n.at(5).get<std::size_t>();
    t.nodes.push_back(node);
  }
  const auto count = static_cast<int>(t.nodes.size());
  if (count == 0) throw ParseError("model file: tree without nodes");
  for (const auto& n : t.nodes) {
    if (n.is_leaf()) continue;
    if (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count ||
        static_cast<std::size_t>(n.feature) >= t.n_features) {
      throw ParseError("model file: malformed tree node");
    }
  }
  return t;
}

ordered_json matrix_to_json(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                j.at("data").get<std::vector<double>>());
}

ordered_json params_to_json(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> ordered_json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TreeModel>) {
          return {{"tree", tree_to_json(p)}};
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          ordered_json trees = ordered_json::array();
          for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
          return {{"tree_seeds", p.tree_seeds}, {"trees", trees}};
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          return {{"k", p.k}, {"labels", p.labels}, {"train", matrix_to_json(p.train)}};
        } else {
          return {{"w", p.w}, {"b", p.b}};
        }
      },
      params);
}

ModelParams params_from_json(ModelKind kind, const nlohmann::json& j) {
  switch (kind) {
    case ModelKind::decision_tree:
    case ModelKind::regression_tree:
      return tree_from_json(j.at("tree"));
    case ModelKind::random_forest: {
      ForestModel f;
      f.tree_seeds = j.at("tree_seeds").get<std::vector<std::uint64_t>>();
      for (const auto& t : j.at("trees")) f.trees.push_back(tree_from_json(t));
      if (f.trees.empty() || f.trees.size() != f.tree_seeds.size()) {
        throw ParseError("model file: forest trees and seeds disagree");
      }
      return f;
    }
    case ModelKind::knn: {
      KnnModel k;
      k.k = j.at("k").get<int>();
      k.labels = j.at("labels").get<std::vector<double>>();
      k.train = matrix_from_json(j.at("train"));
      if (k.labels.size() != k.train.rows()) throw ParseError("model file: knn labels and rows disagree");
      return k;
    }
    case ModelKind::linear_svm:
    case ModelKind::svr:
    case ModelKind::ridge: {
      LinearModel l;
      l.w = j.at("w").get<std::vector<double>>();
      l.b = j.at("b").get<double>();
      return l;
    }
  }
  throw ParseError("model file: unknown kind");
}

}  // namespace

std::vector<double> class_targets(const std::vector<Diagnosis>& y) {
  std::vector<double> t(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] == Diagnosis::mci ? 1.0 : 0.0;
  return t;
}

TrainedModel train_decision_tree(const ClassificationData& data, const Hyperparams& hp) {
  check_dataset(data.x, data.y.size());
  auto m = shell(ModelKind::decision_tree, hp, 0, data.x);
  const auto y = class_targets(data.y);
  m.params = grow_tree(data.x, y, all_rows(y.size()), tree_options(hp, SplitCriterion::gini), nullptr);
  return m;
}

TrainedModel train_random_forest(const ClassificationData& data, const Hyperparams& hp, std::uint64_t seed) {
  check_dataset(data.x, data.y.size());
  auto m = shell(ModelKind::random_forest, hp, seed, data.x);
  m.params = grow_forest(data.x, class_targets(data.y), hp, seed);
  return m;
}

TrainedModel train_knn(const ClassificationData& data, const Hyperparams& hp) {
  check_dataset(data.x, data.y.size());
  auto m = shell(ModelKind::knn, hp, 0, data.x);
  if (static_cast<std::size_t>(hp.k) > data.y.size()) {
    throw LearnerError(LearnerErrc::invalid_hyperparameter,
                       "knn: k=" + std::to_string(hp.k) + " exceeds " + std::to_string(data.y.size()) +
                           " training samples");
  }
  m.standardizer = Standardizer::fit(data.x);
  m.params = KnnModel{m.standardizer->transform(data.x), class_targets(data.y), hp.k};
  return m;
}

TrainedModel train_linear_svm(const ClassificationData& data, const Hyperparams& hp, std::uint64_t seed,
                              SolverTrace* trace) {
  check_dataset(data.x, data.y.size());
  auto m = shell(ModelKind::linear_svm, hp, seed, data.x);
  std::vector<double> y(data.y.size());
  bool has_mci = false;
  bool has_hc = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = data.y[i] == Diagnosis::mci ? 1.0 : -1.0;
    (data.y[i] == Diagnosis::mci ? has_mci : has_hc) = true;
  }
  if (!has_mci || !has_hc) {
    throw LearnerError(LearnerErrc::single_class, "linear_svm: training data contains a single class");
  }
  m.standardizer = Standardizer::fit(data.x);
  m.params = fit_linear_svm(m.standardizer->transform(data.x), y, hp.c, hp.tol, hp.max_iter, trace);
  return m;
}

TrainedModel train_ridge(const RegressionData& data, const Hyperparams& hp) {
  check_dataset(data.x, data.y.size());
  check_targets(data.y);
  auto m = shell(ModelKind::ridge, hp, 0, data.x);
  m.standardizer = Standardizer::fit(data.x);
  m.params = fit_ridge(m.standardizer->transform(data.x), data.y, hp.lambda);
  return m;
}

TrainedModel train_regression_tree(const RegressionData& data, const Hyperparams& hp) {
  check_dataset(data.x, data.y.size());
  check_targets(data.y);
  auto m = shell(ModelKind::regression_tree, hp, 0, data.x);
  m.params = grow_tree(data.x, data.y, all_rows(data.y.size()), tree_options(hp, SplitCriterion::variance),
                       nullptr);
  return m;
}

TrainedModel train_svr(const RegressionData& data, const Hyperparams& hp, std::uint64_t seed,
                       SolverTrace* trace) {
  check_dataset(data.x, data.y.size());
  check_targets(data.y);
  auto m = shell(ModelKind::svr, hp, seed, data.x);
  if (data.y.size() < 2) throw LearnerError(LearnerErrc::empty_dataset, "svr: needs at least 2 samples");
  m.standardizer = Standardizer::fit(data.x);
  m.params = fit_svr(m.standardizer->transform(data.x), data.y, hp.c, hp.epsilon, hp.tol, hp.max_iter, trace);
  return m;
}

TrainedModel train_classifier(ModelKind kind, const ClassificationData& data, const Hyperparams& hp,
                              std::uint64_t seed) {
  require_kind(kind, true);
  switch (kind) {
    case ModelKind::decision_tree: return train_decision_tree(data, hp);
    case ModelKind::random_forest: return train_random_forest(data, hp, seed);
    case ModelKind::knn: return train_knn(data, hp);
    default: return train_linear_svm(data, hp, seed);
  }
}

TrainedModel train_regressor(ModelKind kind, const RegressionData& data, const Hyperparams& hp,
                             std::uint64_t seed) {
  require_kind(kind, false);
  switch (kind) {
    case ModelKind::ridge: return train_ridge(data, hp);
    case ModelKind::regression_tree: return train_regression_tree(data, hp);
    default: return train_svr(data, hp, seed);
  }
}

std::vector<Diagnosis> predict_labels(const TrainedModel& model, const Matrix& x) {
  require_kind(model.kind, true);
  const auto raw = raw_outputs(model, x);
  std::vector<Diagnosis> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    // SVM decision values are signed margins; the others return 1.0 / 0.0.
    const bool mci = model.kind == ModelKind::linear_svm ? raw[i] >= 0.0 : raw[i] > 0.5;
    out[i] = mci ? Diagnosis::mci : Diagnosis::hc;
  }
  return out;
}

std::vector<double> predict_values(const TrainedModel& model, const Matrix& x) {
  require_kind(model.kind, false);
  return raw_outputs(model, x);
}

LinearModel ridge_coefficients(const TrainedModel& model) {
  if (model.kind != ModelKind::ridge) {
    throw LearnerError(LearnerErrc::wrong_model_kind, "ridge_coefficients on a non-ridge model");
  }
  const auto& lin = std::get<LinearModel>(model.params);
  const auto& st = *model.standardizer;
  LinearModel out{std::vector<double>(lin.w.size(), 0.0), lin.b};
  for (std::size_t c = 0; c < lin.w.size(); ++c) {
    if (st.scale[c] == 0.0) continue;
    out.w[c] = lin.w[c] / st.scale[c];
    out.b -= out.w[c] * st.mean[c];
  }
  return out;
}

nlohmann::ordered_json model_to_json(const TrainedModel& model) {
  ordered_json j;
  j["kind"] = to_string(model.kind);
  j["hyperparameters"] = hyperparams_to_json(model.kind, model.hp);
  j["seed"] = model.seed;
  j["n_features"] = model.n_features;
  if (model.standardizer) {
    j["standardizer"] = {{"mean", model.standardizer->mean}, {"scale", model.standardizer->scale}};
  } else {
    j["standardizer"] = nullptr;
  }
  j["params"] = params_to_json(model.params);
  return j;
}

TrainedModel model_from_json(const nlohmann::json& j) {
  try {
    TrainedModel m;
    const auto tag = j.at("kind").get<std::string>();
    const auto kind = parse_model_kind(tag);
    if (!kind) throw ParseError("model file: unknown kind '" + tag + "'");
    m.kind = *kind;
    m.hp = hyperparams_from_json(m.kind, j.at("hyperparameters"));
    validate(m.kind, m.hp);
    m.seed = j.at("seed").get<std::uint64_t>();
    m.n_features = j.at("n_features").get<std::size_t>();
    if (!j.at("standardizer").is_null()) {
      Standardizer s{j["standardizer"].at("mean").get<std::vector<double>>(),
                     j["standardizer"].at("scale").get<std::vector<double>>()};
      if (s.mean.size() != m.n_features || s.scale.size() != m.n_features) {
        throw ParseError("model file: standardizer width mismatch");
      }
      m.standardizer = std::move(s);
    }
    m.params = params_from_json(m.kind, j.at("params"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const TrainedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << model_to_json(model).dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace vamci::learn
