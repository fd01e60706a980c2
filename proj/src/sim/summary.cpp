#include "vamci/sim/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "vamci/core/error.hpp"
#include "vamci/ingest/preprocess.hpp"
#include "vamci/intent/intent_features.hpp"

namespace vamci::sim {
namespace {

double quantile(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Mean similarity between each surviving command and its assigned anchor.
std::optional<double> session_qlt(const Session& raw, const intent::AnchorSet& anchors) {
  if (!raw.embedding(Modality::sentence)) return std::nullopt;
  const auto s = ingest::preprocess(raw);
  const auto f = intent::intent_features(anchors, *s.embedding(Modality::sentence));
  double sum = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < f.qty.size(); ++i) {
    sum += static_cast<double>(f.qty[i]) * f.qlt[i];
    m += f.qty[i];
  }
  return m == 0 ? std::nullopt : std::optional<double>(sum / static_cast<double>(m));
}

}  // namespace

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw ValidationError("quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  return {values.front(), quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75), values.back()};
}

std::vector<GroupSummary> summarize_cohort(const Cohort& cohort, const intent::AnchorSet* anchors) {
  if (cohort.sessions.empty()) throw ValidationError("cannot summarize an empty cohort");
  struct Acc {
    std::vector<double> counts;
    std::vector<double> qlt;
    bool qlt_complete = true;
  };
  std::map<std::pair<Task, Diagnosis>, Acc> acc;
  for (const auto& s : cohort.sessions) {
    auto& a = acc[{s.task, label_from_moca(s.moca)}];
    a.counts.push_back(static_cast<double>(participant_command_count(s)));
    const auto q = anchors ? session_qlt(s, *anchors) : std::nullopt;
    if (q) a.qlt.push_back(*q); else a.qlt_complete = false;
  }
  std::vector<GroupSummary> out;
  for (const auto task : {Task::reading, Task::generation}) {
    for (const auto label : {Diagnosis::hc, Diagnosis::mci}) {
      const auto it = acc.find({task, label});
      if (it == acc.end()) continue;
      const auto& a = it->second;
      GroupSummary g;
      g.task = task;
      g.label = label;
      g.sessions = a.counts.size();
      g.counts = quartiles(a.counts);
      double sum = 0.0;
      for (const double c : a.counts) sum += c;
      g.mean_count = sum / static_cast<double>(a.counts.size());
      if (a.qlt_complete && !a.qlt.empty()) {
        double qs = 0.0;
        for (const double q : a.qlt) qs += q;
        g.mean_qlt = qs / static_cast<double>(a.qlt.size());
      }
      out.push_back(g);
    }
  }
  return out;
}

std::string summary_table(const std::vector<GroupSummary>& groups) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %-5s %8s %6s %6s %6s %6s %6s %6s %8s\n", "task", "label", "sessions",
                "min", "q1", "median", "q3", "max", "iqr", "qlt");
  out << line;
  for (const auto& g : groups) {
    std::snprintf(line, sizeof line, "%-11s %-5s %8zu %6.1f %6.2f %6.2f %6.2f %6.1f %6.2f %8s\n",
                  std::string(to_string(g.task)).c_str(), g.label == Diagnosis::mci ? "MCI" : "HC", g.sessions,
                  g.counts.min, g.counts.q1, g.counts.median, g.counts.q3, g.counts.max, g.counts.iqr(),
                  g.mean_qlt ? fixed(*g.mean_qlt, 4).c_str() : "NA");
    out << line;
  }
  return out.str();
}

std::string summary_csv(const std::vector<GroupSummary>& groups) {
  std::ostringstream out;
  out << "task,label,sessions,min,q1,median,q3,max,iqr,mean_count,mean_qlt\n";
  for (const auto& g : groups) {
    out << to_string(g.task) << ',' << (g.label == Diagnosis::mci ? "MCI" : "HC") << ',' << g.sessions << ','
        << fixed(g.counts.min, 6) << ',' << fixed(g.counts.q1, 6) << ',' << fixed(g.counts.median, 6) << ','
        << fixed(g.counts.q3, 6) << ',' << fixed(g.counts.max, 6) << ',' << fixed(g.counts.iqr(), 6) << ','
        << fixed(g.mean_count, 6) << ',' << (g.mean_qlt ? fixed(*g.mean_qlt, 6) : "NA") << '\n';
  }
  return out.str();
}

}  // namespace vamci::sim
