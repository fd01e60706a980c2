#include "vamci/cli/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "vamci/core/error.hpp"
#include "vamci/core/log.hpp"

namespace vamci::cli {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw ValidationError("run config: " + what); }

std::vector<fusion::FeatureMode> parse_modes(const nlohmann::json& j) {
  std::vector<fusion::FeatureMode> out;
  for (const auto& m : j) {
    const auto name = m.get<std::string>();
    const auto mode = fusion::parse_feature_mode(name);
    if (!mode) bad("unknown feature mode '" + name + "'");
    out.push_back(*mode);
  }
  return out;
}

std::vector<ModelSpec> parse_models(const nlohmann::json& section, bool classifier,
                                    const std::vector<std::string>& defaults) {
  std::vector<std::string> names = defaults;
  if (section.contains("models")) names = section.at("models").get<std::vector<std::string>>();
  const nlohmann::json empty = nlohmann::json::object();
  const auto& bases = section.contains("hyperparameters") ? section.at("hyperparameters") : empty;
  const auto& grids = section.contains("grids") ? section.at("grids") : empty;
  std::vector<ModelSpec> out;
  for (const auto& name : names) {
    out.push_back(make_model_spec(name, classifier, bases.contains(name) ? bases.at(name) : empty,
                                  grids.contains(name) ? std::optional<nlohmann::json>(grids.at(name))
                                                       : std::nullopt));
  }
  return out;
}

void warn_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) warn("run config: ignoring unknown key '" + where + key + "'");
  }
}

const std::vector<std::string> kDefaultClassifiers{"dt", "rf", "knn", "svm"};
const std::vector<std::string> kDefaultRegressors{"lrr", "dt", "svr"};

}  // namespace

std::vector<fusion::FeatureMode> RunConfig::all_modes() const {
  std::vector<fusion::FeatureMode> out;
  for (const auto m : fusion::kFeatureModes) {
    const bool used = std::find(modes.begin(), modes.end(), m) != modes.end() ||
                      (!regressors.empty() &&
                       std::find(regression_modes.begin(), regression_modes.end(), m) != regression_modes.end());
    if (used) out.push_back(m);
  }
  return out;
}

bool is_regression_target(const std::string& target) {
  return target == "total" || parse_subdomain(target).has_value();
}

double regression_target(const MocaScores& moca, const std::string& target) {
  if (target == "total") return moca.total;
  const auto s = parse_subdomain(target);
  if (!s) bad("unknown regression target '" + target + "'");
  return MocaAssessment(moca).subdomain(*s);
}

ModelSpec make_model_spec(const std::string& name, bool classifier, const nlohmann::json& base,
                          const std::optional<nlohmann::json>& grid) {
  const auto kind = classifier ? learn::parse_classifier(name) : learn::parse_regressor(name);
  if (!kind) bad(std::string("unknown ") + (classifier ? "classifier" : "regressor") + " '" + name + "'");
  ModelSpec spec;
  spec.kind = *kind;
  spec.name = name;
  spec.base = base.is_null() ? ordered_json::object() : ordered_json(base);
  if (!spec.base.is_object()) throw ParseError("run config: hyperparameters for '" + name + "' must be an object");
  if (grid) {
    if (!grid->is_array() || grid->empty()) bad("grid for '" + name + "' must be a non-empty list");
    spec.grid_json = ordered_json(*grid);
  } else {
    const auto param = std::string(learn::grid_parameter(*kind));
    spec.grid_json = ordered_json::array();
    for (const auto& hp : learn::default_grid(*kind)) {
      spec.grid_json.push_back({{param, learn::hyperparams_to_json(*kind, hp).at(param)}});
    }
  }
  for (const auto& point : spec.grid_json) {
    if (!point.is_object()) throw ParseError("run config: grid points for '" + name + "' must be objects");
    auto merged = spec.base;
    merged.update(point);
    auto hp = learn::hyperparams_from_json(*kind, merged);
    learn::validate(*kind, hp);
    spec.grid.push_back(hp);
  }
  return spec;
}

RunConfig default_run_config() {
  return parse_run_config(nlohmann::json::object(), std::filesystem::current_path());
}

RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("run config must be a JSON object");
  RunConfig cfg;
  try {
    warn_unknown(j, {"cohort", "anchors", "out", "seed", "tasks", "positive_class", "cv", "classification", "regression"},
                 "");
    auto path = [&](const char* key, std::string& text, std::filesystem::path& out) {
      if (!j.contains(key)) return;
      text = j.at(key).get<std::string>();
      const std::filesystem::path p(text);
      out = p.is_absolute() ? p : base_dir / p;
    };
    path("cohort", cfg.cohort_text, cfg.cohort);
    path("anchors", cfg.anchors_text, cfg.anchors);
    std::string out_text;
    path("out", out_text, cfg.out);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.cv.seed = cfg.seed.value_or(0);
    if (j.contains("tasks")) {
      cfg.tasks.clear();
      for (const auto& t : j.at("tasks")) {
        const auto task = parse_task(t.get<std::string>());
        if (!task) bad("unknown task '" + t.get<std::string>() + "'");
        cfg.tasks.push_back(*task);
      }
    }
    if (j.contains("positive_class")) {
      const auto p = j.at("positive_class").get<std::string>();
      if (p == "MCI" || p == "mci") cfg.cv.positive = Diagnosis::mci;
      else if (p == "HC" || p == "hc") cfg.cv.positive = Diagnosis::hc;
      else bad("positive_class must be MCI or HC");
    }
    if (j.contains("cv")) {
      const auto& cv = j.at("cv");
      warn_unknown(cv, {"rounds", "k", "inner_k"}, "cv.");
      if (cv.contains("rounds")) cfg.cv.rounds = cv.at("rounds").get<int>();
      if (cv.contains("k")) cfg.cv.k = cv.at("k").get<std::size_t>();
      if (cv.contains("inner_k")) cfg.cv.inner_k = cv.at("inner_k").get<std::size_t>();
    }
    const nlohmann::json empty = nlohmann::json::object();
    const auto& cls = j.contains("classification") ? j.at("classification") : empty;
    warn_unknown(cls, {"modes", "models", "hyperparameters", "grids"}, "classification.");
    cfg.modes = cls.contains("modes") ? parse_modes(cls.at("modes"))
                                      : std::vector<fusion::FeatureMode>(fusion::kFeatureModes.begin(),
                                                                         fusion::kFeatureModes.end());
    cfg.classifiers = parse_models(cls, true, kDefaultClassifiers);

    if (j.contains("regression") && j.at("regression").is_null()) {
      // regression disabled
    } else {
      const auto& reg = j.contains("regression") ? j.at("regression") : empty;
      warn_unknown(reg, {"modes", "models", "targets", "hyperparameters", "grids"}, "regression.");
      cfg.regression_modes = reg.contains("modes") ? parse_modes(reg.at("modes"))
                                                   : std::vector<fusion::FeatureMode>{fusion::FeatureMode::ff4};
      cfg.regressors = parse_models(reg, false, kDefaultRegressors);
      if (reg.contains("targets")) {
        cfg.regression_targets = reg.at("targets").get<std::vector<std::string>>();
      } else {
        for (const auto s : kSubdomains) cfg.regression_targets.emplace_back(to_string(s));
        cfg.regression_targets.emplace_back("total");
      }
      for (const auto& t : cfg.regression_targets) {
        if (!is_regression_target(t)) bad("unknown regression target '" + t + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
  if (cfg.tasks.empty()) bad("no tasks selected");
  if (cfg.cv.rounds < 1) bad("cv.rounds must be >= 1");
  if (cfg.cv.k < 2) bad("cv.k must be >= 2");
  if (cfg.cv.inner_k < 2) bad("cv.inner_k must be >= 2");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return parse_run_config(j, dir);
}

nlohmann::ordered_json run_config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed ? ordered_json(*cfg.seed) : ordered_json(nullptr);
  j["cohort"] = cfg.cohort_text;
  j["anchors"] = cfg.anchors_text;
  j["tasks"] = ordered_json::array();
  for (const auto t : cfg.tasks) j["tasks"].push_back(to_string(t));
  j["positive_class"] = cfg.cv.positive == Diagnosis::mci ? "MCI" : "HC";
  j["cv"] = {{"rounds", cfg.cv.rounds}, {"k", cfg.cv.k}, {"inner_k", cfg.cv.inner_k}};
  auto models = [](const std::vector<ModelSpec>& specs) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : specs) {
      ordered_json grid = ordered_json::array();
      for (const auto& hp : s.grid) grid.push_back(learn::hyperparams_to_json(s.kind, hp));
      arr.push_back({{"name", s.name}, {"kind", learn::to_string(s.kind)}, {"grid", grid}});
    }
    return arr;
  };
  auto modes = [](const std::vector<fusion::FeatureMode>& ms) {
    ordered_json arr = ordered_json::array();
    for (const auto m : ms) arr.push_back(fusion::to_string(m));
    return arr;
  };
  j["classification"] = {{"modes", modes(cfg.modes)}, {"models", models(cfg.classifiers)}};
  j["regression"] = {{"modes", modes(cfg.regression_modes)},
                     {"models", models(cfg.regressors)},
                     {"targets", cfg.regression_targets}};
  return j;
}

}  // namespace vamci::cli
