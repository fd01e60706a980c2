#include "vamci/cli/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vamci/cli/parallel.hpp"
#include "vamci/cli/run_config.hpp"
#include "vamci/core/error.hpp"
#include "vamci/core/log.hpp"
#include "vamci/eval/report.hpp"
#include "vamci/fusion/feature_io.hpp"
#include "vamci/ingest/cohort_io.hpp"
#include "vamci/ingest/preprocess.hpp"
#include "vamci/ingest/vaef.hpp"
#include "vamci/sim/simulate.hpp"
#include "vamci/sim/summary.hpp"

namespace vamci::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string task;
  std::vector<std::string> modes;
  std::vector<std::string> models;
  std::string out;
  unsigned jobs = 1;
  std::string cohort;
  std::string anchors;
  // simulate
  std::optional<int> participants;
  std::optional<int> sessions;
  std::optional<double> prevalence;
  std::optional<std::uint32_t> dims;
  std::optional<double> count_shift;
  std::optional<double> noise_shift;
  std::optional<double> dropout;
  // report
  std::vector<std::string> inputs;
};

std::vector<Task> parse_task_filter(const std::string& text) {
  if (text == "both" || text == "all") return {Task::reading, Task::generation};
  const auto t = parse_task(text);
  if (!t) throw ValidationError("--task must be reading, generation or both");
  return {*t};
}

RunConfig resolve_run_config(const Options& o) {
  RunConfig cfg = o.config.empty() ? default_run_config() : load_run_config(o.config);
  if (!o.cohort.empty()) {
    cfg.cohort = o.cohort;
    cfg.cohort_text = o.cohort;
  }
  if (!o.anchors.empty()) {
    cfg.anchors = o.anchors;
    cfg.anchors_text = o.anchors;
  }
  if (!o.out.empty()) cfg.out = o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.task.empty()) cfg.tasks = parse_task_filter(o.task);
  if (!o.modes.empty()) {
    cfg.modes.clear();
    for (const auto& m : o.modes) {
      const auto mode = fusion::parse_feature_mode(m);
      if (!mode) throw ValidationError("unknown feature mode '" + m + "'");
      cfg.modes.push_back(*mode);
    }
  }
  if (!o.models.empty()) {
    std::vector<ModelSpec> keep;
    for (const auto& name : o.models) {
      bool found = false;
      for (const auto& spec : cfg.classifiers) {
        if (spec.name == name) {
          keep.push_back(spec);
          found = true;
        }
      }
      if (!found) keep.push_back(make_model_spec(name, true, nlohmann::json::object(), std::nullopt));
    }
    cfg.classifiers = std::move(keep);
  }
  cfg.cv.seed = cfg.seed.value_or(0);
  return cfg;
}

void require_dir(const fs::path& p, const std::string& what) {
  if (p.empty()) throw ValidationError("no " + what + " given");
  if (!fs::is_directory(p)) throw ParseError(what + " not found: " + p.string());
}

void require_out(const RunConfig& cfg) {
  if (cfg.out.empty()) throw ValidationError("no output directory (set \"out\" in the config or pass --out)");
}

// ---- ingest ----

int cmd_ingest(const Options& o, std::ostream& out) {
  fs::path dir = o.cohort;
  if (dir.empty() && !o.config.empty()) dir = load_run_config(o.config).cohort;
  require_dir(dir, "cohort directory");
  const auto cohort = ingest::load_cohort(dir);
  ingest::DropCounts all;
  std::size_t total_m = 0;
  for (const auto& s : cohort.sessions) {
    ingest::DropCounts d;
    const auto clean = ingest::preprocess(s, &d);
    const auto m = participant_command_count(clean);
    total_m += m;
    all.non_participant += d.non_participant;
    all.asr_error += d.asr_error;
    all.unmatched += d.unmatched;
    all.unresolved_row += d.unresolved_row;
    out << s.key() << "  m=" << m << "  dropped=" << d.total() << " (non_participant=" << d.non_participant
        << ", asr_error=" << d.asr_error << ", unmatched=" << d.unmatched << ", unresolved_row=" << d.unresolved_row
        << ")  label=" << (label_from_moca(s.moca) == Diagnosis::mci ? "MCI" : "HC") << '\n';
  }
  out << cohort.sessions.size() << " sessions, " << total_m << " commands kept, " << all.total() << " dropped\n";
  return kExitOk;
}

// ---- features ----

std::vector<Session> preprocessed_cohort(const fs::path& dir) {
  require_dir(dir, "cohort directory");
  const auto cohort = ingest::load_cohort(dir);
  std::vector<Session> out;
  out.reserve(cohort.sessions.size());
  for (const auto& s : cohort.sessions) out.push_back(ingest::preprocess(s));
  return out;
}

int cmd_features(const Options& o, std::ostream& out) {
  const auto cfg = resolve_run_config(o);
  require_out(cfg);
  const auto modes = cfg.all_modes();
  bool needs_intent = false;
  for (const auto m : modes) {
    const auto comps = fusion::mode_components(m);
    needs_intent = needs_intent || std::find(comps.begin(), comps.end(), fusion::Component::intent) != comps.end();
  }
  std::optional<intent::AnchorSet> anchors;
  if (needs_intent) {
    if (cfg.anchors.empty()) throw ValidationError("intent features need an anchor file (--anchors)");
    anchors = intent::load_anchor_set(cfg.anchors);
  }
  const auto sessions = preprocessed_cohort(cfg.cohort);
  fs::create_directories(cfg.features_dir());
  for (const auto task : cfg.tasks) {
    const bool any = std::any_of(sessions.begin(), sessions.end(), [&](const Session& s) { return s.task == task; });
    if (!any) {
      warn("no " + std::string(to_string(task)) + " sessions in the cohort; skipping");
      continue;
    }
    for (const auto mode : modes) {
      const auto table = fusion::build_feature_table(sessions, anchors ? &*anchors : nullptr, task, mode);
      fusion::write_feature_table(cfg.features_dir(), table);
      out << fusion::feature_table_stem(task, mode) << ": " << table.x.rows() << " x " << table.x.cols() << '\n';
    }
  }
  return kExitOk;
}

// ---- evaluate ----

std::vector<std::size_t> selection_counts(const std::vector<eval::TrialResult>& trials, std::size_t grid_size) {
  std::vector<std::size_t> counts(grid_size, 0);
  for (const auto& t : trials) ++counts[t.grid_index];
  return counts;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const auto cfg = resolve_run_config(o);
  require_out(cfg);
  if (!cfg.seed) throw ValidationError("a seed is required (set \"seed\" in the config or pass --seed)");
  require_dir(cfg.features_dir(), "feature directory");
  const auto parallel = make_parallel_for(o.jobs);
  fs::create_directories(cfg.reports_dir());

  for (const auto task : cfg.tasks) {
    eval::TaskReport report;
    report.task = std::string(to_string(task));
    report.config = run_config_echo(cfg);

    for (const auto mode : cfg.modes) {
      const auto table = fusion::read_feature_table(cfg.features_dir(), task, mode);
      learn::ClassificationData data{table.x, {}, {}};
      for (const auto& s : table.samples) {
        data.y.push_back(s.label);
        data.groups.push_back(s.participant_id);
      }
      for (const auto& spec : cfg.classifiers) {
        const auto trials = eval::nested_cv(data, spec.kind, spec.grid, cfg.cv, parallel);
        eval::ClassificationRow row{std::string(fusion::to_string(mode)), spec.kind,
                                    eval::summarize_classification(trials), selection_counts(trials, spec.grid.size())};
        out << report.task << ' ' << row.mode << ' ' << learn::display_name(spec.kind) << ": accuracy mean "
            << eval::format_number(row.summary.accuracy.mean) << " best " << eval::format_number(row.summary.accuracy.best)
            << '\n';
        report.classification.push_back(std::move(row));
      }
      fs::path csv = cfg.reports_dir() / ("classification_" + fusion::feature_table_stem(task, mode) + ".csv");
      ingest::write_text_file(csv, eval::classification_table_csv(report, fusion::to_string(mode)));
    }

    for (const auto mode : cfg.regressors.empty() ? std::vector<fusion::FeatureMode>{} : cfg.regression_modes) {
      const auto table = fusion::read_feature_table(cfg.features_dir(), task, mode);
      for (const auto& target : cfg.regression_targets) {
        learn::RegressionData data{table.x, {}, {}, {}};
        for (const auto& s : table.samples) {
          data.y.push_back(regression_target(s.moca, target));
          data.groups.push_back(s.participant_id);
          data.strata.push_back(s.label);
        }
        for (const auto& spec : cfg.regressors) {
          const auto trials = eval::nested_cv(data, spec.kind, spec.grid, cfg.cv, parallel);
          eval::RegressionRow row{std::string(fusion::to_string(mode)), target, spec.kind,
                                  eval::summarize_regression(trials), selection_counts(trials, spec.grid.size())};
          out << report.task << ' ' << row.mode << ' ' << target << ' ' << learn::display_name(spec.kind)
              << ": rmse mean " << eval::format_number(row.summary.rmse.mean) << '\n';
          report.regression.push_back(std::move(row));
        }
      }
      fs::path csv = cfg.reports_dir() / ("regression_" + fusion::feature_table_stem(task, mode) + ".csv");
      ingest::write_text_file(csv, eval::regression_table_csv(report, fusion::to_string(mode)));
    }

    ingest::write_text_file(cfg.reports_dir() / ("report_" + report.task + ".json"),
                            eval::report_to_json(report).dump(2) + "\n");
  }
  return kExitOk;
}

// ---- simulate ----

int cmd_simulate(const Options& o, std::ostream& out) {
  sim::SimConfig cfg = o.config.empty() ? sim::SimConfig{} : sim::load_sim_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.participants) cfg.n_participants = *o.participants;
  if (o.sessions) cfg.sessions_per_participant = *o.sessions;
  if (o.prevalence) cfg.mci_prevalence = *o.prevalence;
  if (o.dims) cfg.dims = {*o.dims, *o.dims, *o.dims};
  if (o.count_shift) cfg.generation.count_shift = *o.count_shift;
  if (o.noise_shift) cfg.generation.noise_shift = *o.noise_shift;
  if (o.dropout) cfg.dropout = *o.dropout;
  if (!o.task.empty()) cfg.tasks = parse_task_filter(o.task);
  if (o.out.empty()) throw ValidationError("simulate needs --out");
  sim::validate(cfg);

  const auto result = sim::simulate_cohort(cfg);
  const fs::path dir = o.out;
  sim::write_simulation(dir, result);
  ingest::write_text_file(dir / "simulation.json", sim::sim_config_to_json(cfg).dump(2) + "\n");
  const auto summary = sim::summarize_cohort(result.cohort, &result.anchors);
  ingest::write_text_file(dir / "summary.csv", sim::summary_csv(summary));
  out << result.cohort.sessions.size() << " sessions written to " << dir.string() << '\n';
  out << sim::summary_table(summary);
  return kExitOk;
}

// ---- report ----

int cmd_report(const Options& o, std::ostream& out) {
  std::vector<fs::path> inputs(o.inputs.begin(), o.inputs.end());
  std::optional<RunConfig> cfg;
  if (!o.config.empty() || !o.out.empty()) cfg = resolve_run_config(o);
  fs::path out_dir;
  if (inputs.empty()) {
    if (!cfg || cfg->out.empty()) throw ValidationError("report needs --inputs or a config/--out with evaluation results");
    out_dir = cfg->reports_dir();
    for (const auto* task : {"reading", "generation"}) {
      const auto p = out_dir / ("report_" + std::string(task) + ".json");
      if (fs::exists(p)) inputs.push_back(p);
    }
    if (inputs.empty()) throw ParseError("no evaluation reports found in " + out_dir.string());
  } else {
    out_dir = (cfg && !cfg->out.empty()) ? cfg->reports_dir() : inputs.front().parent_path();
  }

  std::vector<eval::TaskReport> reports;
  for (const auto& p : inputs) {
    const auto text = ingest::read_text_file(p);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
    try {
      reports.push_back(eval::report_from_json(j));
    } catch (const ParseError& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
  }
  std::map<std::string, int> seen;
  for (const auto& r : reports) {
    if (++seen[r.task] > 1) throw ValidationError("two reports for task " + r.task);
  }

  fs::create_directories(out_dir);
  const auto comparison = eval::comparison_csv(reports);
  ingest::write_text_file(out_dir / "comparison.csv", comparison);

  out << "classification accuracy (mean), reading vs generation\n";
  std::map<std::pair<std::string, std::string>, std::array<std::optional<double>, 2>> acc;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : reports) {
    const int idx = r.task == "reading" ? 0 : 1;
    for (const auto& row : r.classification) {
      const std::pair<std::string, std::string> key{row.mode, std::string(learn::display_name(row.model))};
      if (!acc.count(key)) order.push_back(key);
      acc[key][idx] = row.summary.accuracy.mean;
    }
  }
  auto show = [](const std::optional<double>& v) { return v ? eval::format_number(*v) : std::string("NA"); };
  for (const auto& key : order) {
    const auto& v = acc[key];
    out << "  " << key.first << ' ' << key.second << ": reading " << show(v[0]) << "  generation " << show(v[1]);
    if (v[0] && v[1]) out << "  delta " << eval::format_number(*v[1] - *v[0]);
    out << '\n';
  }
  out << "comparison table: " << (out_dir / "comparison.csv").string() << '\n';

  if (cfg && !cfg->cohort.empty() && fs::is_directory(cfg->cohort)) {
    const auto cohort = ingest::load_cohort(cfg->cohort);
    std::optional<intent::AnchorSet> anchors;
    if (!cfg->anchors.empty() && fs::exists(cfg->anchors)) anchors = intent::load_anchor_set(cfg->anchors);
    const auto summary = sim::summarize_cohort(cohort, anchors ? &*anchors : nullptr);
    ingest::write_text_file(out_dir / "boxplot.csv", sim::summary_csv(summary));
    out << "command-count box-plot data: " << (out_dir / "boxplot.csv").string() << '\n';
  }
  return kExitOk;
}

class SinkGuard {
 public:
  explicit SinkGuard(std::ostream& err)
      : previous_(set_warning_sink([this, &err](std::string_view m) {
          std::lock_guard lock(mutex_);
          err << "warning: " << m << '\n';
        })) {}
  ~SinkGuard() { set_warning_sink(previous_); }

 private:
  std::mutex mutex_;
  WarningSink previous_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Voice-assistant command pipeline for MCI screening experiments", "vamci"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "Run config (simulate: simulation config)");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--task", o.task, "reading, generation or both");
  app.add_option("--modes", o.modes, "Feature sets, e.g. INTENT,FF1")->delimiter(',');
  app.add_option("--models", o.models, "Classifiers: dt,rf,knn,svm")->delimiter(',');
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--jobs", o.jobs, "Parallel trials (results do not depend on it)")->check(CLI::PositiveNumber);

  auto* ingest_cmd = app.add_subcommand("ingest", "Parse and preprocess a cohort, report drops");
  ingest_cmd->add_option("dir", o.cohort, "Cohort directory");
  ingest_cmd->add_option("--cohort", o.cohort, "Cohort directory");

  auto* features_cmd = app.add_subcommand("features", "Write design matrices per task and feature set");
  features_cmd->add_option("--cohort", o.cohort, "Cohort directory");
  features_cmd->add_option("--anchors", o.anchors, "Anchor set file");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Nested cross-validation over models and feature sets");

  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic cohort");
  simulate_cmd->add_option("--participants", o.participants, "Number of participants");
  simulate_cmd->add_option("--sessions", o.sessions, "Sessions per participant (<= 7)");
  simulate_cmd->add_option("--prevalence", o.prevalence, "Probability that a visit is MCI");
  simulate_cmd->add_option("--dims", o.dims, "Embedding width for every modality");
  simulate_cmd->add_option("--count-shift", o.count_shift, "Generation task: extra mean commands for MCI");
  simulate_cmd->add_option("--noise-shift", o.noise_shift, "Generation task: extra embedding noise for MCI");
  simulate_cmd->add_option("--dropout", o.dropout, "Probability that a later visit is missing");

  auto* report_cmd = app.add_subcommand("report", "Compare task reports side by side");
  report_cmd->add_option("--inputs", o.inputs, "Report JSON files")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  SinkGuard sink(err);
  try {
    if (*ingest_cmd) return cmd_ingest(o, out);
    if (*features_cmd) return cmd_features(o, out);
    if (*evaluate_cmd) return cmd_evaluate(o, out);
    if (*simulate_cmd) return cmd_simulate(o, out);
    if (*report_cmd) return cmd_report(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace vamci::cli
