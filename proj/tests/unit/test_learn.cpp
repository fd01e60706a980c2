#include <doctest.h>

#include <cmath>
#include <variant>

#include "../oracles/oracles.hpp"
#include "../support/pipeline.hpp"
#include "vamci/learn/forest.hpp"
#include "vamci/learn/knn.hpp"
#include "vamci/learn/linear.hpp"
#include "vamci/learn/model.hpp"
#include "vamci/learn/standardize.hpp"

using namespace vamci;
using namespace vamci::learn;

namespace {

const auto M = Diagnosis::mci;
const auto H = Diagnosis::hc;

ClassificationData cls(const std::vector<std::vector<double>>& rows, const std::vector<Diagnosis>& y) {
  return {Matrix::from_rows(rows), y, std::vector<std::string>(y.size(), "g")};
}

RegressionData reg(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
  return {Matrix::from_rows(rows), y, std::vector<std::string>(y.size(), "g"), {}};
}

std::vector<std::vector<double>> gaussian_rows(Rng& rng, int n, int d, double sd = 1.0) {
  std::normal_distribution<double> g(0.0, sd);
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  for (auto& r : rows)
    for (auto& v : r) v = g(rng);
  return rows;
}

Hyperparams depth(std::optional<int> d) {
  Hyperparams hp;
  hp.max_depth = d;
  return hp;
}

bool non_increasing(const SolverTrace& t) {
  for (std::size_t i = 1; i < t.objective.size(); ++i) {
    if (t.objective[i] > t.objective[i - 1] + 1e-12 * std::max(1.0, std::fabs(t.objective[i - 1]))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decision tree basics") {
  const auto pure = cls({{1}, {2}, {3}}, {H, H, H});
  const auto t = std::get<TreeModel>(train_decision_tree(pure, {}).params);
  CHECK(t.nodes.size() == 1);
  CHECK(t.nodes[0].value == 0.0);

  const auto xor_data = cls({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {M, M, H, H});
  for (const std::optional<int> d : {std::optional<int>(2), std::optional<int>(3), std::optional<int>()}) {
    CHECK(predict_labels(train_decision_tree(xor_data, depth(d)), xor_data.x) == xor_data.y);
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i < 25; ++i) {
    rows.push_back({static_cast<double>(i) * 0.37});
    y.push_back(static_cast<double>(i) * 0.37);
  }
  const auto data = reg(rows, y);
  const auto pred = predict_values(train_regression_tree(data, {}), data.x);
  for (std::size_t i = 0; i < y.size(); ++i) CHECK(pred[i] == y[i]);
}

TEST_CASE("decision tree matches the exhaustive reference") {
  Rng rng(77);
  for (int inst = 0; inst < 300; ++inst) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const int d = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::vector<int> y(n);
    std::vector<Diagnosis> labels(n);
    for (int i = 0; i < n; ++i) {
      for (auto& v : rows[i]) v = static_cast<double>(rng() % 4);  // many ties
      y[i] = static_cast<int>(rng() % 2);
      labels[i] = y[i] ? M : H;
    }
    const std::optional<int> max_depth = inst % 3 == 0 ? std::optional<int>(2) : std::nullopt;
    const auto want = oracle::gini_tree(rows, y, max_depth);
    const auto got = std::get<TreeModel>(train_decision_tree(cls(rows, labels), depth(max_depth)).params);
    REQUIRE(got.nodes.size() == want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
      CHECK(got.nodes[k].feature == want[k].feature);
      CHECK(got.nodes[k].threshold == want[k].threshold);
      CHECK(got.nodes[k].value == want[k].value);
    }
    for (int a = 0; a < 4; ++a) {
      std::vector<double> probe(d, static_cast<double>(a) + 0.5);
      CHECK(got.predict(probe) == oracle::tree_predict(want, probe));
    }
  }
}

TEST_CASE("tree leaves hold the training majority or mean of their rows") {
  Rng rng(5);
  const auto rows = gaussian_rows(rng, 60, 3);
  std::vector<double> yr;
  std::vector<Diagnosis> yc;
  for (const auto& r : rows) {
    yr.push_back(r[0] * 2 + r[1]);
    yc.push_back(r[0] + r[2] > 0 ? M : H);
  }
  const auto creg = reg(rows, yr);
  const auto tr = std::get<TreeModel>(train_regression_tree(creg, depth(3)).params);
  const auto tc = std::get<TreeModel>(train_decision_tree(cls(rows, yc), depth(3)).params);
  auto leaf_of = [](const TreeModel& t, const std::vector<double>& r) {
    int id = 0;
    while (!t.nodes[id].is_leaf()) id = r[t.nodes[id].feature] <= t.nodes[id].threshold ? t.nodes[id].left : t.nodes[id].right;
    return id;
  };
  std::map<int, std::vector<std::size_t>> by_leaf_r, by_leaf_c;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    by_leaf_r[leaf_of(tr, rows[i])].push_back(i);
    by_leaf_c[leaf_of(tc, rows[i])].push_back(i);
  }
  for (const auto& [leaf, idx] : by_leaf_r) {
    double s = 0;
    for (const auto i : idx) s += yr[i];
    CHECK(tr.nodes[leaf].value == doctest::Approx(s / idx.size()).epsilon(1e-12));
  }
  for (const auto& [leaf, idx] : by_leaf_c) {
    std::size_t mci = 0;
    for (const auto i : idx) mci += yc[i] == M;
    CHECK(tc.nodes[leaf].value == (2 * mci >= idx.size() ? 1.0 : 0.0));
  }
  CHECK(tc.depth() <= 3);
}

TEST_CASE("forest voting and determinism") {
  auto leaf = [](double v) {
    TreeModel t;
    t.nodes.push_back(TreeNode{});
    t.nodes[0].value = v;
    return t;
  };
  ForestModel f{{leaf(1), leaf(0), leaf(1)}, {0, 0, 0}};
  const std::vector<double> row{0.0};
  CHECK(f.predict(row) == 1.0);
  f.trees = {leaf(0), leaf(1)};
  CHECK(f.predict(row) == 1.0);  // tie goes to MCI
  f.trees = {leaf(0), leaf(0), leaf(1)};
  CHECK(f.predict(row) == 0.0);
  CHECK(default_max_features(68) == 9);
  CHECK(default_max_features(1) == 1);

  Rng rng(6);
  const auto rows = gaussian_rows(rng, 80, 5);
  std::vector<Diagnosis> y;
  for (const auto& r : rows) y.push_back(r[1] - r[3] > 0.2 ? M : H);
  const auto data = cls(rows, y);
  Hyperparams hp;
  hp.n_trees = 15;
  const auto a = train_random_forest(data, hp, 42);
  const auto b = train_random_forest(data, hp, 42);
  CHECK(a == b);
  CHECK(predict_labels(a, data.x) == predict_labels(b, data.x));
  CHECK_FALSE(train_random_forest(data, hp, 43) == a);

  Hyperparams single;
  single.n_trees = 1;
  single.bootstrap = false;
  single.max_features = 5;
  const auto forest = train_random_forest(data, single, 9);
  const auto tree = train_decision_tree(data, {});
  CHECK(std::get<ForestModel>(forest.params).trees.front() == std::get<TreeModel>(tree.params));
  CHECK(predict_labels(forest, data.x) == predict_labels(tree, data.x));
}

TEST_CASE("k nearest neighbours") {
  KnnModel m{Matrix::from_rows({{0}, {1}, {2}, {10}}), {0, 0, 1, 1}, 1};
  CHECK(m.predict(std::vector<double>{2}) == 1.0);
  CHECK(m.predict(std::vector<double>{0}) == 0.0);
  m.k = 3;
  CHECK(m.predict(std::vector<double>{0.4}) == 0.0);  // [HC, HC, MCI]
  m.k = 2;
  CHECK(m.predict(std::vector<double>{1.6}) == 1.0);  // [MCI, HC] tie
  m.labels = {0, 1, 0, 1};
  CHECK(m.neighbors(std::vector<double>{0.5}) == std::vector<std::size_t>{0, 1});  // equidistant: lower index first
  CHECK(m.predict(std::vector<double>{0.5}) == 1.0);

  Rng rng(4);
  const auto rows = gaussian_rows(rng, 40, 3);
  std::vector<Diagnosis> y;
  for (std::size_t i = 0; i < rows.size(); ++i) y.push_back(i % 3 ? H : M);
  Hyperparams k1;
  k1.k = 1;
  const auto data = cls(rows, y);
  CHECK(predict_labels(train_knn(data, k1), data.x) == y);
}

TEST_CASE("standardization reproduces z-scores") {
  Rng rng(10);
  auto rows = gaussian_rows(rng, 50, 4, 30.0);
  for (auto& r : rows) {
    r[1] = r[1] * 1e-3 + 1e4;
    r[3] = 7.0;  // constant
  }
  const auto x = Matrix::from_rows(rows);
  const auto s = Standardizer::fit(x);
  const auto z = s.transform(x);
  for (std::size_t c = 0; c < 4; ++c) {
    double mean = 0, ss = 0;
    for (std::size_t r = 0; r < z.rows(); ++r) mean += z(r, c);
    mean /= z.rows();
    for (std::size_t r = 0; r < z.rows(); ++r) ss += (z(r, c) - mean) * (z(r, c) - mean);
    CHECK(std::fabs(mean) < 1e-10);
    if (c == 3) {
      for (std::size_t r = 0; r < z.rows(); ++r) CHECK(z(r, c) == 0.0);
    } else {
      CHECK(std::fabs(std::sqrt(ss / z.rows()) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("linear SVM") {
  Hyperparams big;
  big.c = 1000.0;
  const auto sep = cls({{-2}, {-1}, {1}, {2}}, {M, M, H, H});
  CHECK(predict_labels(train_linear_svm(sep, big, 0), sep.x) == sep.y);

  // mirrored through the origin with flipped labels
  Rng rng(12);
  auto rows = gaussian_rows(rng, 15, 3);
  std::vector<Diagnosis> y;
  for (const auto& r : rows) y.push_back(r[0] + 0.5 * r[1] > 0.3 ? M : H);
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({-rows[i][0], -rows[i][1], -rows[i][2]});
    y.push_back(y[i] == M ? H : M);
  }
  SolverTrace trace;
  const auto model = train_linear_svm(cls(rows, y), {}, 0, &trace);
  CHECK(std::fabs(std::get<LinearModel>(model.params).b) < 1e-6);
  CHECK(trace.converged);
  CHECK(non_increasing(trace));
}

TEST_CASE("SVM and SVR reach the oracle optimum with a monotone trace") {
  Rng rng(13);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int inst = 0; inst < 10; ++inst) {
    const int n = 6 + inst;
    const auto z = gaussian_rows(rng, n, 1 + inst % 3);
    std::vector<double> yc, yr;
    for (const auto& r : z) {
      yc.push_back(r[0] + 0.7 * g(rng) > 0 ? 1.0 : -1.0);
      yr.push_back(1.5 * r[0] + 0.3 * g(rng));
    }
    if (std::all_of(yc.begin(), yc.end(), [&](double v) { return v == yc[0]; })) yc[0] = -yc[0];
    const auto zm = Matrix::from_rows(z);
    for (const double c : {0.1, 1.0, 10.0}) {
      SolverTrace t1, t2;
      const auto svm = fit_linear_svm(zm, yc, c, 1e-6, 1000000, &t1);
      const double want = oracle::svm_optimum(z, yc, c);
      CHECK(svm_primal_objective(zm, yc, svm, c) == doctest::Approx(want).epsilon(1e-4));
      CHECK(non_increasing(t1));
      const auto svr = fit_svr(zm, yr, c, 0.1, 1e-6, 1000000, &t2);
      const double want_r = oracle::svr_optimum(z, yr, c, 0.1);
      CHECK(svr_primal_objective(zm, yr, svr, c, 0.1) == doctest::Approx(want_r).epsilon(1e-4));
      CHECK(non_increasing(t2));
    }
  }
}

TEST_CASE("SVR tube cases") {
  Hyperparams hp;
  hp.c = 100.0;
  const auto flat = reg({{1}, {2}, {3}, {4}}, {5, 5, 5, 5});
  for (const auto v : predict_values(train_svr(flat, hp, 0), flat.x)) CHECK(std::fabs(v - 5.0) <= hp.epsilon + 1e-9);

  Hyperparams wide;
  wide.epsilon = 10.0;
  const auto data = reg({{1}, {2}, {3}}, {1, 2, 3});
  const auto m = train_svr(data, wide, 0);
  CHECK(std::get<LinearModel>(m.params).w[0] == 0.0);
  CHECK(svr_primal_objective(data.x, data.y, std::get<LinearModel>(m.params), 1.0, 10.0) == 0.0);
}

TEST_CASE("ridge regression") {
  Hyperparams l0;
  l0.lambda = 0.0;
  const auto line = reg({{1}, {2}, {3}}, {2, 4, 6});
  const auto m = train_ridge(line, l0);
  const auto raw = ridge_coefficients(m);
  CHECK(raw.w[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::fabs(raw.b) < 1e-12);
  CHECK(predict_values(m, Matrix::from_rows({{5}}))[0] == doctest::Approx(10.0).epsilon(1e-12));

  Hyperparams huge;
  huge.lambda = 1e12;
  for (const auto v : predict_values(train_ridge(line, huge), line.x)) CHECK(v == doctest::Approx(4.0).epsilon(1e-9));

  const auto flat = reg({{1, 3}, {2, -1}, {3, 0}}, {7, 7, 7});
  for (const double lambda : {0.0, 0.5, 10.0}) {
    Hyperparams hp;
    hp.lambda = lambda;
    const auto c = ridge_coefficients(train_ridge(flat, hp));
    CHECK(c.w == std::vector<double>{0.0, 0.0});
    CHECK(c.b == doctest::Approx(7.0));
  }
}

TEST_CASE("ridge solution matches the normal equations and zeroes the gradient") {
  Rng rng(14);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const int d : {1, 3, 6}) {
    const auto rows = gaussian_rows(rng, 20, d);
    std::vector<double> y;
    for (const auto& r : rows) y.push_back(r[0] - 0.5 * r[d - 1] + 0.2 * g(rng) + 3.0);
    const auto z = Matrix::from_rows(rows);
    for (const double lambda : {0.01, 1.0, 10.0}) {
      const auto m = fit_ridge(z, y, lambda);
      const auto want = oracle::ridge(rows, y, lambda);
      for (int f = 0; f < d; ++f) CHECK(m.w[f] == doctest::Approx(want[f]).epsilon(1e-10));
      CHECK(m.b == doctest::Approx(want[d]).epsilon(1e-10));

      auto objective = [&](std::vector<long double> w, long double b) {
        long double s = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          long double f = b;
          for (int k = 0; k < d; ++k) f += w[k] * rows[i][k];
          s += (y[i] - f) * (y[i] - f);
        }
        for (const auto v : w) s += lambda * v * v;
        return s;
      };
      std::vector<long double> w(m.w.begin(), m.w.end());
      const long double h = 1e-6L;
      for (int k = 0; k <= d; ++k) {
        auto wp = w, wm = w;
        long double bp = m.b, bm = m.b;
        if (k < d) {
          wp[k] += h;
          wm[k] -= h;
        } else {
          bp += h;
          bm -= h;
        }
        const long double grad = (objective(wp, bp) - objective(wm, bm)) / (2 * h);
        CHECK(std::fabs(static_cast<double>(grad)) < 1e-8);
      }
    }
  }
}

TEST_CASE("trained models predict the right shapes and survive save and load") {
  Rng rng(15);
  const auto rows = gaussian_rows(rng, 30, 3);
  std::vector<Diagnosis> yc;
  std::vector<double> yr;
  for (const auto& r : rows) {
    yc.push_back(r[0] > 0 ? M : H);
    yr.push_back(r[1] * 3 + 1);
  }
  const auto c = cls(rows, yc);
  const auto r = reg(rows, yr);
  const auto dir = testing_support::scratch_dir("models");
  Hyperparams hp;
  hp.n_trees = 5;
  for (const auto kind : {ModelKind::decision_tree, ModelKind::random_forest, ModelKind::knn, ModelKind::linear_svm}) {
    const auto m = train_classifier(kind, c, hp, 3);
    const auto p = predict_labels(m, c.x);
    CHECK(p.size() == rows.size());
    save_model(dir / "m.json", m);
    const auto back = load_model(dir / "m.json");
    CHECK(predict_labels(back, c.x) == p);
    CHECK_THROWS_AS(predict_values(m, c.x), LearnerError);
  }
  for (const auto kind : {ModelKind::ridge, ModelKind::regression_tree, ModelKind::svr}) {
    const auto m = train_regressor(kind, r, hp, 3);
    const auto p = predict_values(m, r.x);
    CHECK(p.size() == rows.size());
    save_model(dir / "m.json", m);
    CHECK(predict_values(load_model(dir / "m.json"), r.x) == p);
  }
  const auto m = train_classifier(ModelKind::knn, c, hp, 0);
  CHECK_THROWS_AS(predict_labels(m, Matrix(2, 4)), LearnerError);
}

TEST_CASE("hyperparameters validate and serialize") {
  Hyperparams hp;
  hp.k = 0;
  CHECK_THROWS_AS(validate(ModelKind::knn, hp), LearnerError);
  hp = {};
  hp.c = -1;
  CHECK_THROWS_AS(validate(ModelKind::linear_svm, hp), LearnerError);
  hp = {};
  hp.max_depth = 0;
  CHECK_THROWS_AS(validate(ModelKind::decision_tree, hp), LearnerError);

  hp = {};
  hp.max_depth = 4;
  hp.n_trees = 12;
  const auto j = hyperparams_to_json(ModelKind::random_forest, hp);
  CHECK(hyperparams_from_json(ModelKind::random_forest, nlohmann::json::parse(j.dump())) == hp);
  CHECK_THROWS_AS(hyperparams_from_json(ModelKind::knn, nlohmann::json{{"C", 1.0}}), ParseError);
  CHECK(default_grid(ModelKind::knn).size() == 4);
  CHECK_FALSE(default_grid(ModelKind::random_forest).back().max_depth.has_value());

  CHECK_THROWS_AS(train_decision_tree(cls({}, {}), {}), LearnerError);
  CHECK_THROWS_AS(train_knn(ClassificationData{Matrix::from_rows({{1}, {2}}), {M}, {}}, {}), LearnerError);
}
