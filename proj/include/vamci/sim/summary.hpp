#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vamci/core/model.hpp"
#include "vamci/intent/anchors.hpp"

namespace vamci::sim {

struct Quartiles {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double iqr() const { return q3 - q1; }
};

// Linear-interpolation quantiles (h = (n-1)p). Throws ValidationError on empty input.
Quartiles quartiles(std::vector<double> values);

struct GroupSummary {
  Task task = Task::reading;
  Diagnosis label = Diagnosis::hc;
  std::size_t sessions = 0;
  Quartiles counts;              // participant command counts m
  double mean_count = 0.0;
  std::optional<double> mean_qlt;  // mean similarity of each command to its assigned anchor
};

// One entry per (task, label) present, tasks in enum order, HC before MCI. QLT needs
// `anchors` and sentence embeddings. Throws ValidationError on an empty cohort.
std::vector<GroupSummary> summarize_cohort(const Cohort& cohort, const intent::AnchorSet* anchors);

std::string summary_table(const std::vector<GroupSummary>& groups);
// task,label,sessions,min,q1,median,q3,max,iqr,mean_count,mean_qlt
std::string summary_csv(const std::vector<GroupSummary>& groups);

}  // namespace vamci::sim
