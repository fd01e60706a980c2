#include "vamci/eval/report.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "vamci/core/error.hpp"

namespace vamci::eval {
namespace {

using nlohmann::ordered_json;

ordered_json summary_json(const MetricSummary& s) { return {{"mean", s.mean}, {"best", s.best}}; }

MetricSummary summary_from(const nlohmann::json& j) {
  return {j.at("mean").get<double>(), j.at("best").get<double>()};
}

learn::ModelKind kind_from(const nlohmann::json& j) {
  const auto tag = j.at("kind").get<std::string>();
  const auto kind = learn::parse_model_kind(tag);
  if (!kind) throw ParseError("report: unknown model kind '" + tag + "'");
  return *kind;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

// Values of one report row keyed by metric column name.
using MetricValues = std::vector<std::pair<std::string, std::optional<double>>>;

MetricValues values_of(const ClassificationSummary& s) {
  return {{"accuracy_mean", s.accuracy.mean}, {"accuracy_best", s.accuracy.best},
          {"precision_mean", s.precision.mean}, {"precision_best", s.precision.best},
          {"recall_mean", s.recall.mean}, {"recall_best", s.recall.best},
          {"f1_mean", s.f1.mean}, {"f1_best", s.f1.best}};
}

MetricValues values_of(const RegressionSummary& s) {
  MetricValues v{{"mae_mean", s.mae.mean}, {"mae_best", s.mae.best},
                 {"rmse_mean", s.rmse.mean}, {"rmse_best", s.rmse.best}};
  v.emplace_back("rrmse_mean", s.rrmse ? std::optional<double>(s.rrmse->mean) : std::nullopt);
  v.emplace_back("rrmse_best", s.rrmse ? std::optional<double>(s.rrmse->best) : std::nullopt);
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

nlohmann::ordered_json report_to_json(const TaskReport& report) {
  ordered_json j;
  j["task"] = report.task;
  j["config"] = report.config;
  ordered_json cls = ordered_json::array();
  for (const auto& row : report.classification) {
    cls.push_back({{"features", row.mode},
                   {"model", learn::display_name(row.model)},
                   {"kind", learn::to_string(row.model)},
                   {"trials", row.summary.trials},
                   {"accuracy", summary_json(row.summary.accuracy)},
                   {"precision", summary_json(row.summary.precision)},
                   {"recall", summary_json(row.summary.recall)},
                   {"f1", summary_json(row.summary.f1)},
                   {"selection_counts", row.selection_counts}});
  }
  j["classification"] = cls;
  ordered_json reg = ordered_json::array();
  for (const auto& row : report.regression) {
    reg.push_back({{"features", row.mode},
                   {"target", row.target},
                   {"model", learn::display_name(row.model)},
                   {"kind", learn::to_string(row.model)},
                   {"trials", row.summary.trials},
                   {"mae", summary_json(row.summary.mae)},
                   {"rmse", summary_json(row.summary.rmse)},
                   {"rrmse", row.summary.rrmse ? summary_json(*row.summary.rrmse) : ordered_json(nullptr)},
                   {"selection_counts", row.selection_counts}});
  }
  j["regression"] = reg;
  return j;
}

TaskReport report_from_json(const nlohmann::json& j) {
  try {
    TaskReport r;
    r.task = j.at("task").get<std::string>();
    if (r.task != "reading" && r.task != "generation") throw ParseError("report: unknown task '" + r.task + "'");
    r.config = j.at("config");
    for (const auto& c : j.at("classification")) {
      ClassificationRow row;
      row.mode = c.at("features").get<std::string>();
      row.model = kind_from(c);
      row.summary.trials = c.at("trials").get<std::size_t>();
      row.summary.accuracy = summary_from(c.at("accuracy"));
      row.summary.precision = summary_from(c.at("precision"));
      row.summary.recall = summary_from(c.at("recall"));
      row.summary.f1 = summary_from(c.at("f1"));
      row.selection_counts = c.at("selection_counts").get<std::vector<std::size_t>>();
      r.classification.push_back(std::move(row));
    }
    for (const auto& c : j.at("regression")) {
      RegressionRow row;
      row.mode = c.at("features").get<std::string>();
      row.target = c.at("target").get<std::string>();
      row.model = kind_from(c);
      row.summary.trials = c.at("trials").get<std::size_t>();
      row.summary.mae = summary_from(c.at("mae"));
      row.summary.rmse = summary_from(c.at("rmse"));
      if (!c.at("rrmse").is_null()) row.summary.rrmse = summary_from(c.at("rrmse"));
      row.selection_counts = c.at("selection_counts").get<std::vector<std::size_t>>();
      r.regression.push_back(std::move(row));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string classification_table_csv(const TaskReport& report, std::string_view mode) {
  std::ostringstream out;
  out << "model,features,trials";
  for (const auto& [name, v] : values_of(ClassificationSummary{})) out << ',' << name;
  out << '\n';
  for (const auto& row : report.classification) {
    if (row.mode != mode) continue;
    out << learn::display_name(row.model) << ',' << row.mode << ',' << row.summary.trials;
    for (const auto& [name, v] : values_of(row.summary)) out << ',' << cell(v);
    out << '\n';
  }
  return out.str();
}

std::string regression_table_csv(const TaskReport& report, std::string_view mode) {
  std::ostringstream out;
  out << "target,model,features,trials";
  for (const auto& [name, v] : values_of(RegressionSummary{})) out << ',' << name;
  out << '\n';
  for (const auto& row : report.regression) {
    if (row.mode != mode) continue;
    out << row.target << ',' << learn::display_name(row.model) << ',' << row.mode << ',' << row.summary.trials;
    for (const auto& [name, v] : values_of(row.summary)) out << ',' << cell(v);
    out << '\n';
  }
  return out.str();
}

std::string comparison_csv(const std::vector<TaskReport>& reports) {
  // key: kind, features, target, model tag, metric -> per-task value
  using Key = std::array<std::string, 5>;
  std::vector<Key> order;
  std::map<Key, std::array<std::optional<double>, 2>> table;
  auto put = [&](const Key& key, int task, std::optional<double> v) {
    auto [it, inserted] = table.try_emplace(key);
    if (inserted) order.push_back(key);
    if (v) it->second[task] = v;
  };
  for (const int task : {0, 1}) {
    const std::string name = task == 0 ? "reading" : "generation";
    for (const auto& r : reports) {
      if (r.task != name) continue;
      for (const auto& row : r.classification) {
        for (const auto& [metric, v] : values_of(row.summary)) {
          put({"classification", row.mode, "diagnosis", std::string(learn::display_name(row.model)), metric}, task, v);
        }
      }
      for (const auto& row : r.regression) {
        for (const auto& [metric, v] : values_of(row.summary)) {
          put({"regression", row.mode, row.target, std::string(learn::display_name(row.model)), metric}, task, v);
        }
      }
    }
  }
  std::ostringstream out;
  out << "kind,features,target,model,metric,reading,generation,delta\n";
  for (const auto& key : order) {
    const auto& v = table[key];
    std::optional<double> delta;
    if (v[0] && v[1]) delta = *v[1] - *v[0];
    out << key[0] << ',' << key[1] << ',' << key[2] << ',' << key[3] << ',' << key[4] << ',' << cell(v[0]) << ','
        << cell(v[1]) << ',' << cell(delta) << '\n';
  }
  return out.str();
}

}  // namespace vamci::eval
