#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vamci/core/model.hpp"

namespace vamci::eval {

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  friend bool operator==(const ClassificationMetrics&, const ClassificationMetrics&) = default;
};

// Zero denominators yield 0 rather than an error.
ClassificationMetrics classification_metrics(std::span<const Diagnosis> y_true, std::span<const Diagnosis> y_pred,
                                             Diagnosis positive = Diagnosis::mci);

struct RegressionMetrics {
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> rrmse;  // percent: 100 * rmse / mean(y_true); absent when that mean is 0

  friend bool operator==(const RegressionMetrics&, const RegressionMetrics&) = default;
};

RegressionMetrics regression_metrics(std::span<const double> y_true, std::span<const double> y_pred);

struct MetricSummary {
  double mean = 0.0;
  double best = 0.0;
  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct ClassificationSummary {
  std::size_t trials = 0;
  MetricSummary accuracy, precision, recall, f1;
  friend bool operator==(const ClassificationSummary&, const ClassificationSummary&) = default;
};

struct RegressionSummary {
  std::size_t trials = 0;
  MetricSummary mae, rmse;
  std::optional<MetricSummary> rrmse;  // over the trials where it is defined
  friend bool operator==(const RegressionSummary&, const RegressionSummary&) = default;
};

// Mean over trials; best = max for classification metrics, min for regression errors.
// Both throw ValidationError on empty input.
ClassificationSummary summarize(std::span<const ClassificationMetrics> trials);
RegressionSummary summarize(std::span<const RegressionMetrics> trials);

}  // namespace vamci::eval
