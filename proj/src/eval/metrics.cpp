#include "vamci/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vamci/core/error.hpp"

namespace vamci::eval {
namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ValidationError("metrics: " + std::to_string(a) + " true values vs " + std::to_string(b) +
                          " predictions");
  }
  if (a == 0) throw ValidationError("metrics: empty input");
}

template <typename Get>
MetricSummary over(std::size_t n, Get get, bool higher_is_better) {
  MetricSummary s;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = get(i);
    sum += v;
    if (i == 0 || (higher_is_better ? v > s.best : v < s.best)) s.best = v;
  }
  s.mean = sum / static_cast<double>(n);
  return s;
}

}  // namespace

ClassificationMetrics classification_metrics(std::span<const Diagnosis> y_true, std::span<const Diagnosis> y_pred,
                                             Diagnosis positive) {
  check_lengths(y_true.size(), y_pred.size());
  ClassificationMetrics m;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool t = y_true[i] == positive;
    const bool p = y_pred[i] == positive;
    if (t && p) ++m.tp;
    else if (!t && p) ++m.fp;
    else if (t && !p) ++m.fn;
    else ++m.tn;
  }
  const auto n = static_cast<double>(y_true.size());
  m.accuracy = static_cast<double>(m.tp + m.tn) / n;
  m.precision = ratio(static_cast<double>(m.tp), static_cast<double>(m.tp + m.fp));
  m.recall = ratio(static_cast<double>(m.tp), static_cast<double>(m.tp + m.fn));
  m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

RegressionMetrics regression_metrics(std::span<const double> y_true, std::span<const double> y_pred) {
  check_lengths(y_true.size(), y_pred.size());
  const auto n = static_cast<double>(y_true.size());
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  double true_sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_pred[i] - y_true[i];
    abs_sum += std::abs(e);
    sq_sum += e * e;
    true_sum += y_true[i];
  }
  RegressionMetrics m;
  m.mae = abs_sum / n;
  // RMSE >= MAE holds exactly; the max only absorbs rounding when all |e| are equal.
  m.rmse = std::max(std::sqrt(sq_sum / n), m.mae);
  const double mean = true_sum / n;
  if (mean != 0.0) m.rrmse = 100.0 * m.rmse / mean;
  return m;
}

ClassificationSummary summarize(std::span<const ClassificationMetrics> trials) {
  if (trials.empty()) throw ValidationError("cannot summarize zero trials");
  ClassificationSummary s;
  s.trials = trials.size();
  s.accuracy = over(trials.size(), [&](std::size_t i) { return trials[i].accuracy; }, true);
  s.precision = over(trials.size(), [&](std::size_t i) { return trials[i].precision; }, true);
  s.recall = over(trials.size(), [&](std::size_t i) { return trials[i].recall; }, true);
  s.f1 = over(trials.size(), [&](std::size_t i) { return trials[i].f1; }, true);
  return s;
}

RegressionSummary summarize(std::span<const RegressionMetrics> trials) {
  if (trials.empty()) throw ValidationError("cannot summarize zero trials");
  RegressionSummary s;
  s.trials = trials.size();
  s.mae = over(trials.size(), [&](std::size_t i) { return trials[i].mae; }, false);
  s.rmse = over(trials.size(), [&](std::size_t i) { return trials[i].rmse; }, false);
  std::vector<double> rr;
  for (const auto& t : trials) {
    if (t.rrmse) rr.push_back(*t.rrmse);
  }
  if (!rr.empty()) s.rrmse = over(rr.size(), [&](std::size_t i) { return rr[i]; }, false);
  return s;
}

}  // namespace vamci::eval
