#include "vamci/sim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vamci/core/error.hpp"
#include "vamci/core/log.hpp"

namespace vamci::sim {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw ValidationError("simulation config: " + field + " " + why);
}

void check_nonneg(const std::string& field, double v) {
  if (!std::isfinite(v) || v < 0.0) bad(field, "must be a finite value >= 0");
}

void check_score(const std::string& name, const ScoreModel& s) {
  if (!std::isfinite(s.hc_mean) || !std::isfinite(s.mci_mean)) bad(name, "means must be finite");
  check_nonneg(name + ".hc_sd", s.hc_sd);
  check_nonneg(name + ".mci_sd", s.mci_sd);
}

ordered_json score_json(const ScoreModel& s) {
  return {{"hc_mean", s.hc_mean}, {"hc_sd", s.hc_sd}, {"mci_mean", s.mci_mean}, {"mci_sd", s.mci_sd}};
}

ordered_json task_json(const TaskModel& t) {
  return {{"extra_mean", t.extra_mean},
          {"dispersion", t.dispersion},
          {"count_shift", t.count_shift},
          {"noise_shift", t.noise_shift}};
}

void warn_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) warn("simulation config: ignoring unknown key '" + where + key + "'");
  }
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_score(const nlohmann::json& j, ScoreModel& s, const std::string& where) {
  warn_unknown(j, {"hc_mean", "hc_sd", "mci_mean", "mci_sd"}, where);
  read(j, "hc_mean", s.hc_mean);
  read(j, "hc_sd", s.hc_sd);
  read(j, "mci_mean", s.mci_mean);
  read(j, "mci_sd", s.mci_sd);
}

void read_task(const nlohmann::json& j, TaskModel& t, const std::string& where) {
  warn_unknown(j, {"extra_mean", "dispersion", "count_shift", "noise_shift"}, where);
  read(j, "extra_mean", t.extra_mean);
  read(j, "dispersion", t.dispersion);
  read(j, "count_shift", t.count_shift);
  read(j, "noise_shift", t.noise_shift);
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n_participants < 1) bad("n_participants", "must be >= 1");
  if (cfg.sessions_per_participant < 1 || cfg.sessions_per_participant > kMaxSessionIndex) {
    bad("sessions_per_participant", "must be in [1, " + std::to_string(kMaxSessionIndex) + "]");
  }
  if (!(cfg.dropout >= 0.0 && cfg.dropout < 1.0)) bad("dropout", "must be in [0, 1)");
  if (!(cfg.mci_prevalence >= 0.0 && cfg.mci_prevalence <= 1.0)) bad("mci_prevalence", "must be in [0, 1]");
  if (cfg.tasks.empty()) bad("tasks", "must list at least one task");
  if (std::set<Task>(cfg.tasks.begin(), cfg.tasks.end()).size() != cfg.tasks.size()) bad("tasks", "has duplicates");
  for (const auto m : kModalities) {
    if (cfg.dim(m) < 1) bad("dims." + std::string(to_string(m)), "must be >= 1");
  }
  check_nonneg("noise_sd", cfg.noise_sd);
  for (const auto t : {Task::reading, Task::generation}) {
    const auto& tm = cfg.task_model(t);
    const std::string name = "task_models." + std::string(to_string(t));
    check_nonneg(name + ".extra_mean", tm.extra_mean);
    if (!std::isfinite(tm.dispersion) || tm.dispersion <= 0.0) bad(name + ".dispersion", "must be > 0");
    check_nonneg(name + ".count_shift", tm.count_shift);
    check_nonneg(name + ".noise_shift", tm.noise_shift);
  }
  check_nonneg("assistant_mean", cfg.assistant_mean);
  check_nonneg("asr_error_mean", cfg.asr_error_mean);
  check_score("moca.total", cfg.moca.total);
  for (const auto s : kSubdomains) check_score("moca." + std::string(to_string(s)), cfg.moca.subdomain(s));
}

nlohmann::ordered_json sim_config_to_json(const SimConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  j["n_participants"] = cfg.n_participants;
  j["sessions_per_participant"] = cfg.sessions_per_participant;
  j["dropout"] = cfg.dropout;
  j["mci_prevalence"] = cfg.mci_prevalence;
  j["tasks"] = ordered_json::array();
  for (const auto t : cfg.tasks) j["tasks"].push_back(to_string(t));
  for (const auto m : kModalities) j["dims"][std::string(to_string(m))] = cfg.dim(m);
  j["noise_sd"] = cfg.noise_sd;
  j["task_models"]["reading"] = task_json(cfg.reading);
  j["task_models"]["generation"] = task_json(cfg.generation);
  j["assistant_mean"] = cfg.assistant_mean;
  j["asr_error_mean"] = cfg.asr_error_mean;
  j["moca"]["total"] = score_json(cfg.moca.total);
  for (const auto s : kSubdomains) j["moca"][std::string(to_string(s))] = score_json(cfg.moca.subdomain(s));
  return j;
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("simulation config must be a JSON object");
  SimConfig cfg;
  try {
    warn_unknown(j,
                 {"seed", "n_participants", "sessions_per_participant", "dropout", "mci_prevalence", "tasks", "dims",
                  "noise_sd", "task_models", "assistant_mean", "asr_error_mean", "moca"},
                 "");
    read(j, "seed", cfg.seed);
    read(j, "n_participants", cfg.n_participants);
    read(j, "sessions_per_participant", cfg.sessions_per_participant);
    read(j, "dropout", cfg.dropout);
    read(j, "mci_prevalence", cfg.mci_prevalence);
    read(j, "noise_sd", cfg.noise_sd);
    read(j, "assistant_mean", cfg.assistant_mean);
    read(j, "asr_error_mean", cfg.asr_error_mean);
    if (j.contains("tasks")) {
      cfg.tasks.clear();
      for (const auto& t : j.at("tasks")) {
        const auto name = t.get<std::string>();
        const auto task = parse_task(name);
        if (!task) throw ParseError("simulation config: unknown task '" + name + "'");
        cfg.tasks.push_back(*task);
      }
    }
    if (j.contains("dims")) {
      const auto& d = j.at("dims");
      warn_unknown(d, {"audio", "textual", "sentence"}, "dims.");
      for (const auto m : kModalities) {
        read(d, std::string(to_string(m)).c_str(), cfg.dims[static_cast<std::size_t>(m)]);
      }
    }
    if (j.contains("task_models")) {
      const auto& tm = j.at("task_models");
      warn_unknown(tm, {"reading", "generation"}, "task_models.");
      if (tm.contains("reading")) read_task(tm.at("reading"), cfg.reading, "task_models.reading.");
      if (tm.contains("generation")) read_task(tm.at("generation"), cfg.generation, "task_models.generation.");
    }
    if (j.contains("moca")) {
      const auto& m = j.at("moca");
      warn_unknown(m,
                   {"total", "memory", "executive_function", "attention", "language", "visuospatial",
                    "orientation"},
                   "moca.");
      if (m.contains("total")) read_score(m.at("total"), cfg.moca.total, "moca.total.");
      for (const auto s : kSubdomains) {
        const std::string name(to_string(s));
        if (m.contains(name)) read_score(m.at(name), cfg.moca.subdomain(s), "moca." + name + ".");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("simulation config: ") + e.what());
  }
  return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return sim_config_from_json(nlohmann::json::parse(buffer.str()));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace vamci::sim
