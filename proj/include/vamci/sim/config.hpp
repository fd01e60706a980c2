#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "vamci/core/model.hpp"

namespace vamci::sim {

struct ScoreModel {
  double hc_mean = 0.0;
  double hc_sd = 0.0;
  double mci_mean = 0.0;
  double mci_sd = 0.0;
  friend bool operator==(const ScoreModel&, const ScoreModel&) = default;
};

struct MocaModel {
  ScoreModel total{27.5, 1.2, 22.0, 2.5};
  std::array<ScoreModel, 6> subdomains{{
      {12.0, 2.0, 8.0, 2.5},   // memory
      {10.5, 1.5, 8.5, 2.0},   // executive_function
      {16.0, 1.5, 13.5, 2.5},  // attention
      {5.0, 0.8, 4.2, 1.2},    // language
      {6.0, 0.8, 5.0, 1.2},    // visuospatial
      {5.9, 0.3, 5.5, 0.8},    // orientation
  }};
  ScoreModel& subdomain(Subdomain s) { return subdomains[static_cast<std::size_t>(s)]; }
  const ScoreModel& subdomain(Subdomain s) const { return subdomains[static_cast<std::size_t>(s)]; }
  friend bool operator==(const MocaModel&, const MocaModel&) = default;
};

// Per-task generation parameters. A session has 34 anchor-echo commands plus a
// negative-binomial number of extra commands (mean `extra_mean`, plus `count_shift` for MCI).
struct TaskModel {
  double extra_mean = 1.0;
  double dispersion = 2.0;   // NB size parameter; larger = closer to Poisson
  double count_shift = 0.0;  // extra mean commands for MCI
  double noise_shift = 0.0;  // extra embedding noise sd for MCI
  friend bool operator==(const TaskModel&, const TaskModel&) = default;
};

struct SimConfig {
  std::uint64_t seed = 7;
  int n_participants = 35;
  int sessions_per_participant = 7;
  double dropout = 0.0;  // probability that a visit after the first is missing
  double mci_prevalence = 98.0 / 243.0;
  std::vector<Task> tasks{Task::reading, Task::generation};
  std::array<std::uint32_t, 3> dims{kAudioWidth, kTextualWidth, kTextualWidth};  // audio, textual, sentence
  double noise_sd = 0.5;  // sigma_0, norm-scale: per-coordinate sd is sigma / sqrt(d)
  TaskModel reading{1.0, 2.0, 0.0, 0.0};
  TaskModel generation{6.0, 2.0, 8.0, 0.3};
  double assistant_mean = 1.0;  // assistant turns per session (dropped by preprocessing)
  double asr_error_mean = 0.5;  // failed recognitions per session (dropped by preprocessing)
  MocaModel moca;

  TaskModel& task_model(Task t) { return t == Task::reading ? reading : generation; }
  const TaskModel& task_model(Task t) const { return t == Task::reading ? reading : generation; }
  std::uint32_t dim(Modality m) const { return dims[static_cast<std::size_t>(m)]; }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Throws ValidationError naming the first offending field.
void validate(const SimConfig& cfg);

nlohmann::ordered_json sim_config_to_json(const SimConfig& cfg);
// Missing keys keep their defaults, unknown keys warn, wrong types raise ParseError.
SimConfig sim_config_from_json(const nlohmann::json& j);
SimConfig load_sim_config(const std::filesystem::path& path);

}  // namespace vamci::sim
