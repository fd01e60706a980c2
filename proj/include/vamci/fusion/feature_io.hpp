#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vamci/core/matrix.hpp"
#include "vamci/core/model.hpp"
#include "vamci/fusion/fusion.hpp"

namespace vamci::fusion {

struct SampleInfo {
  std::string participant_id;
  int session_index = 1;
  Diagnosis label = Diagnosis::hc;
  MocaScores moca;

  friend bool operator==(const SampleInfo&, const SampleInfo&) = default;
};

// N x dim design matrix for one (task, mode) with per-row labels.
struct FeatureTable {
  Task task = Task::reading;
  FeatureMode mode = FeatureMode::intent;
  Matrix x;
  std::vector<SampleInfo> samples;
};

// Builds the table from preprocessed sessions of `task` (cohort order). Throws
// MissingComponentError if any session lacks a component the mode needs, and
// ValidationError if widths disagree across sessions.
FeatureTable build_feature_table(const std::vector<Session>& sessions, const intent::AnchorSet* anchors,
                                 Task task, FeatureMode mode);

std::string feature_table_stem(Task task, FeatureMode mode);  // e.g. "generation_FF4"

// Writes <stem>.vaef (binary32 design matrix) and <stem>.labels.csv.
void write_feature_table(const std::filesystem::path& dir, const FeatureTable& table);
FeatureTable read_feature_table(const std::filesystem::path& dir, Task task, FeatureMode mode);

// Label sidecar CSV: participant_id,session_index,label,total,memory,...,orientation
std::string write_labels_csv(const std::vector<SampleInfo>& samples);
std::vector<SampleInfo> parse_labels_csv(const std::string& text);

}  // namespace vamci::fusion
