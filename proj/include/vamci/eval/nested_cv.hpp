#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "vamci/eval/folds.hpp"
#include "vamci/eval/metrics.hpp"
#include "vamci/learn/hyperparams.hpp"

namespace vamci::eval {

// Runs body(0..n-1); implementations may use threads but every call must complete
// before returning. Results never depend on scheduling.
using ParallelFor = std::function<void(std::size_t n, const std::function<void(std::size_t)>& body)>;
void sequential_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct CvSettings {
  int rounds = 10;
  std::size_t k = 10;
  std::size_t inner_k = 5;
  std::uint64_t seed = 0;
  Diagnosis positive = Diagnosis::mci;
};

struct TrialResult {
  int round = 0;
  std::size_t fold = 0;
  std::size_t grid_index = 0;
  learn::Hyperparams chosen;
  std::vector<double> inner_scores;  // per grid point: mean inner accuracy, or mean inner RMSE
  std::vector<std::size_t> train;    // dataset rows
  std::vector<std::size_t> test;
  std::vector<std::vector<std::size_t>> inner_folds;  // dataset rows held out by each inner fold
  std::variant<ClassificationMetrics, RegressionMetrics> metrics;
};

// rounds x k outer trials. Each trial selects a grid point by inner CV on its training
// rows only (best mean accuracy / lowest mean RMSE, ties to the earlier grid point), refits
// on all training rows and scores the held-out fold. Inner folds use min(inner_k, groups)
// folds; with a single training group the first grid point is used. Training splits that
// contain one class only are predicted as that class, and KNN's k is capped at the split size.
std::vector<TrialResult> nested_cv(const learn::ClassificationData& data, learn::ModelKind kind,
                                   const std::vector<learn::Hyperparams>& grid, const CvSettings& settings,
                                   const ParallelFor& parallel = sequential_for);
std::vector<TrialResult> nested_cv(const learn::RegressionData& data, learn::ModelKind kind,
                                   const std::vector<learn::Hyperparams>& grid, const CvSettings& settings,
                                   const ParallelFor& parallel = sequential_for);

ClassificationSummary summarize_classification(const std::vector<TrialResult>& trials);
RegressionSummary summarize_regression(const std::vector<TrialResult>& trials);

}  // namespace vamci::eval
