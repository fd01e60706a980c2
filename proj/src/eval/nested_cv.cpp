#include "vamci/eval/nested_cv.hpp"

#include <algorithm>

#include "vamci/core/error.hpp"
#include "vamci/core/random.hpp"
#include "vamci/learn/model.hpp"

namespace vamci::eval {
namespace {

using learn::ClassificationData;
using learn::Hyperparams;
using learn::ModelKind;
using learn::RegressionData;

constexpr std::uint64_t kRefitKey = 1;
constexpr std::uint64_t kInnerFitKey = 2;
constexpr std::uint64_t kInnerPlanKey = 3;

template <typename T>
std::vector<T> pick(const std::vector<T>& v, std::span<const std::size_t> idx) {
  if (v.empty()) return {};
  std::vector<T> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(v[i]);
  return out;
}

ClassificationData subset(const ClassificationData& d, std::span<const std::size_t> idx) {
  return {d.x.select_rows(idx), pick(d.y, idx), pick(d.groups, idx)};
}

RegressionData subset(const RegressionData& d, std::span<const std::size_t> idx) {
  return {d.x.select_rows(idx), pick(d.y, idx), pick(d.groups, idx), pick(d.strata, idx)};
}

const std::vector<Diagnosis>& strata(const ClassificationData& d) { return d.y; }
const std::vector<Diagnosis>& strata(const RegressionData& d) { return d.strata; }

ClassificationMetrics fit_and_score(ModelKind kind, const ClassificationData& train, const ClassificationData& test,
                                    Hyperparams hp, std::uint64_t seed, Diagnosis positive) {
  std::vector<Diagnosis> pred;
  const bool single_class =
      std::all_of(train.y.begin(), train.y.end(), [&](Diagnosis v) { return v == train.y.front(); });
  if (single_class) {
    pred.assign(test.y.size(), train.y.front());
  } else {
    if (kind == ModelKind::knn) hp.k = std::min<int>(hp.k, static_cast<int>(train.y.size()));
    const auto model = learn::train_classifier(kind, train, hp, seed);
    pred = learn::predict_labels(model, test.x);
  }
  return classification_metrics(test.y, pred, positive);
}

RegressionMetrics fit_and_score(ModelKind kind, const RegressionData& train, const RegressionData& test,
                                const Hyperparams& hp, std::uint64_t seed, Diagnosis) {
  const auto model = learn::train_regressor(kind, train, hp, seed);
  return regression_metrics(test.y, learn::predict_values(model, test.x));
}

double selection_score(const ClassificationMetrics& m) { return m.accuracy; }
double selection_score(const RegressionMetrics& m) { return -m.rmse; }
double reported_score(const ClassificationMetrics& m) { return m.accuracy; }
double reported_score(const RegressionMetrics& m) { return m.rmse; }

template <typename Data>
std::vector<TrialResult> run(const Data& data, ModelKind kind, const std::vector<Hyperparams>& grid,
                             const CvSettings& settings, const ParallelFor& parallel) {
  if (grid.empty()) throw ValidationError("nested CV: empty hyperparameter grid");
  if (settings.rounds < 1) throw ValidationError("nested CV: rounds must be >= 1");
  learn::check_dataset(data.x, data.y.size());
  if (data.groups.size() != data.y.size()) throw ValidationError("nested CV: group ids missing");
  for (const auto& hp : grid) learn::validate(kind, hp);

  std::vector<FoldPlan> plans;
  for (int r = 0; r < settings.rounds; ++r) {
    plans.push_back(make_folds(data.groups, strata(data), settings.k, r, settings.seed));
  }

  const std::size_t n_trials = static_cast<std::size_t>(settings.rounds) * settings.k;
  std::vector<TrialResult> results(n_trials);
  parallel(n_trials, [&](std::size_t t) {
    const int r = static_cast<int>(t / settings.k);
    const std::size_t f = t % settings.k;
    const auto ur = static_cast<std::uint64_t>(r);
    TrialResult& out = results[t];
    out.round = r;
    out.fold = f;
    out.test = plans[r].folds[f];
    out.train = plans[r].train_indices(f);
    const Data train = subset(data, out.train);
    const Data test = subset(data, out.test);

    const std::size_t inner_k = std::min(settings.inner_k, count_groups(train.groups));
    std::optional<FoldPlan> inner;
    if (inner_k >= 2) {
      inner = make_folds(train.groups, strata(train), inner_k, r,
                         derive_seed(settings.seed, {ur, f, kInnerPlanKey}));
      for (const auto& fold : inner->folds) out.inner_folds.push_back(pick(out.train, fold));
    }

    std::size_t chosen = 0;
    if (inner && grid.size() > 1) {
      double best = 0.0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        double sel = 0.0;
        double rep = 0.0;
        for (std::size_t j = 0; j < inner->k(); ++j) {
          const auto fit_rows = inner->train_indices(j);
          const auto m = fit_and_score(kind, subset(train, fit_rows), subset(train, inner->folds[j]), grid[g],
                                       derive_seed(settings.seed, {ur, f, kInnerFitKey, g, j}), settings.positive);
          sel += selection_score(m);
          rep += reported_score(m);
        }
        sel /= static_cast<double>(inner->k());
        out.inner_scores.push_back(rep / static_cast<double>(inner->k()));
        if (g == 0 || sel > best) {
          best = sel;
          chosen = g;
        }
      }
    }
    out.grid_index = chosen;
    out.chosen = grid[chosen];
    out.metrics = fit_and_score(kind, train, test, grid[chosen], derive_seed(settings.seed, {ur, f, kRefitKey}),
                                settings.positive);
  });
  return results;
}

}  // namespace

void sequential_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

std::vector<TrialResult> nested_cv(const ClassificationData& data, ModelKind kind, const std::vector<Hyperparams>& grid,
                                   const CvSettings& settings, const ParallelFor& parallel) {
  if (!learn::is_classifier(kind)) {
    throw learn::LearnerError(learn::LearnerErrc::wrong_model_kind, "nested CV: classification needs a classifier");
  }
  return run(data, kind, grid, settings, parallel);
}

std::vector<TrialResult> nested_cv(const RegressionData& data, ModelKind kind, const std::vector<Hyperparams>& grid,
                                   const CvSettings& settings, const ParallelFor& parallel) {
  if (learn::is_classifier(kind)) {
    throw learn::LearnerError(learn::LearnerErrc::wrong_model_kind, "nested CV: regression needs a regressor");
  }
  if (!data.strata.empty() && data.strata.size() != data.y.size()) {
    throw ValidationError("nested CV: strata length mismatch");
  }
  return run(data, kind, grid, settings, parallel);
}

ClassificationSummary summarize_classification(const std::vector<TrialResult>& trials) {
  std::vector<ClassificationMetrics> m;
  for (const auto& t : trials) m.push_back(std::get<ClassificationMetrics>(t.metrics));
  return summarize(m);
}

RegressionSummary summarize_regression(const std::vector<TrialResult>& trials) {
  std::vector<RegressionMetrics> m;
  for (const auto& t : trials) m.push_back(std::get<RegressionMetrics>(t.metrics));
  return summarize(m);
}

}  // namespace vamci::eval
