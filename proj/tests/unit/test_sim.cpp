#include <doctest.h>

#include <cmath>

#include "../support/pipeline.hpp"
#include "vamci/ingest/cohort_io.hpp"
#include "vamci/ingest/vaef.hpp"
#include "vamci/sim/config.hpp"
#include "vamci/sim/simulate.hpp"
#include "vamci/sim/summary.hpp"

using namespace vamci;
using namespace vamci::sim;

namespace {

SimConfig small(std::uint64_t seed) {
  SimConfig cfg;
  cfg.seed = seed;
  cfg.n_participants = 40;
  cfg.sessions_per_participant = 6;
  cfg.dims = {8, 8, 8};
  return cfg;
}

struct CountStats {
  double mean[2] = {0, 0};  // HC, MCI
  double var[2] = {0, 0};
  std::size_t n[2] = {0, 0};
};

CountStats count_stats(const Cohort& cohort, Task task) {
  CountStats s;
  std::vector<double> values[2];
  for (const auto& session : cohort.sessions) {
    if (session.task != task) continue;
    const int k = label_from_moca(session.moca) == Diagnosis::mci;
    values[k].push_back(static_cast<double>(participant_command_count(session)));
  }
  for (int k = 0; k < 2; ++k) {
    s.n[k] = values[k].size();
    for (const auto v : values[k]) s.mean[k] += v / static_cast<double>(s.n[k]);
    for (const auto v : values[k]) s.var[k] += (v - s.mean[k]) * (v - s.mean[k]) / static_cast<double>(s.n[k] - 1);
  }
  return s;
}

double stderr_of_gap(const CountStats& s) { return std::sqrt(s.var[0] / s.n[0] + s.var[1] / s.n[1]); }

}  // namespace

TEST_CASE("simulated labels agree with the MoCA threshold and visits share records") {
  const auto sim = simulate_cohort(small(1));
  CHECK(sim.cohort.provenance == Provenance::simulated);
  CHECK(sim.cohort.sessions.size() == 40 * 6 * 2);
  std::map<std::pair<std::string, int>, MocaScores> visit;
  for (const auto& s : sim.cohort.sessions) {
    const auto total = s.moca.total();
    if (label_from_moca(s.moca) == Diagnosis::hc) CHECK(total >= 26);
    const auto [it, fresh] = visit.emplace(std::make_pair(s.participant_id, s.session_index), s.moca.scores());
    if (!fresh) CHECK(it->second == s.moca.scores());
    CHECK_NOTHROW(validate(s));
  }
}

TEST_CASE("null cohort has no count gap, planted shift shows up") {
  auto cfg = small(2);
  cfg.generation.count_shift = 0.0;
  cfg.generation.noise_shift = 0.0;
  const auto null_stats = count_stats(simulate_cohort(cfg).cohort, Task::generation);
  CHECK(std::fabs(null_stats.mean[1] - null_stats.mean[0]) < 2.0 * stderr_of_gap(null_stats));

  cfg.generation.count_shift = 8.0;
  const auto planted = count_stats(simulate_cohort(cfg).cohort, Task::generation);
  const double gap = planted.mean[1] - planted.mean[0];
  CHECK(planted.n[0] + planted.n[1] >= 200);
  CHECK(std::fabs(gap - 8.0) < 3.0 * stderr_of_gap(planted));
}

TEST_CASE("summaries: planted band above HC, reading tight near 34") {
  const auto sim = simulate_cohort(small(3));
  const auto groups = summarize_cohort(sim.cohort, &sim.anchors);
  REQUIRE(groups.size() == 4);
  const GroupSummary* gen[2] = {nullptr, nullptr};
  for (const auto& g : groups) {
    if (g.task == Task::generation) gen[g.label == Diagnosis::mci] = &g;
    if (g.task == Task::reading) {
      CHECK(g.counts.median >= 34.0);
      CHECK(g.counts.median <= 36.0);
      CHECK(g.counts.iqr() <= 2.0);
    }
    REQUIRE(g.mean_qlt.has_value());
  }
  REQUIRE(gen[0]);
  REQUIRE(gen[1]);
  // the MCI band is shifted up at both ends, and its median clears the HC band
  CHECK(gen[1]->counts.q1 > gen[0]->counts.q1);
  CHECK(gen[1]->counts.q3 > gen[0]->counts.q3);
  CHECK(gen[1]->counts.median > gen[0]->counts.q3);
  // extra MCI noise lowers the mean quality
  CHECK(*gen[1]->mean_qlt < *gen[0]->mean_qlt);
  CHECK(summary_csv(groups).rfind("task,label,sessions,min,q1,median,q3,max,iqr,mean_count,mean_qlt", 0) == 0);
}

TEST_CASE("identical sessions give zero IQR") {
  auto sim = simulate_cohort(small(4));
  Cohort same;
  for (int i = 0; i < 5; ++i) {
    auto s = sim.cohort.sessions.front();
    s.session_index = i + 1;
    same.sessions.push_back(s);
  }
  const auto groups = summarize_cohort(same, nullptr);
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].counts.iqr() == 0.0);
  CHECK_FALSE(groups[0].mean_qlt.has_value());
}

TEST_CASE("quartiles interpolate linearly") {
  const auto q = quartiles({4, 1, 3, 2});
  CHECK(q.min == 1);
  CHECK(q.q1 == 1.75);
  CHECK(q.median == 2.5);
  CHECK(q.q3 == 3.25);
  CHECK(q.max == 4);
  CHECK_THROWS_AS(quartiles({}), ValidationError);
}

TEST_CASE("simulation is deterministic and round trips through disk") {
  auto cfg = small(5);
  cfg.n_participants = 4;
  cfg.sessions_per_participant = 2;
  const auto a = simulate_cohort(cfg);
  const auto b = simulate_cohort(cfg);
  CHECK(a.cohort.sessions == b.cohort.sessions);
  const auto d1 = testing_support::scratch_dir("sim_a");
  const auto d2 = testing_support::scratch_dir("sim_b");
  write_simulation(d1, a);
  write_simulation(d2, b);
  for (const auto& e : std::filesystem::recursive_directory_iterator(d1)) {
    if (!e.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(e.path(), d1);
    CHECK(ingest::read_file_bytes(e.path()) == ingest::read_file_bytes(d2 / rel));
  }
  const auto loaded = ingest::load_cohort(d1);
  REQUIRE(loaded.sessions.size() == a.cohort.sessions.size());
  for (const auto& s : a.cohort.sessions) {
    const auto it = std::find_if(loaded.sessions.begin(), loaded.sessions.end(),
                                 [&](const Session& t) { return t.key() == s.key(); });
    REQUIRE(it != loaded.sessions.end());
    CHECK(*it == s);
  }
  cfg.seed = 6;
  CHECK_FALSE(simulate_cohort(cfg).cohort.sessions == a.cohort.sessions);
}

TEST_CASE("full-size shape, prevalence bounds and dropout") {
  SimConfig cfg;
  cfg.dims = {4, 4, 4};
  cfg.tasks = {Task::reading};
  CHECK(simulate_cohort(cfg).cohort.sessions.size() <= 245);
  cfg.mci_prevalence = 0.0;
  for (const auto& s : simulate_cohort(cfg).cohort.sessions) CHECK(label_from_moca(s.moca) == Diagnosis::hc);
  cfg.mci_prevalence = 1.0;
  for (const auto& s : simulate_cohort(cfg).cohort.sessions) CHECK(label_from_moca(s.moca) == Diagnosis::mci);
  cfg.dropout = 0.3;
  const auto dropped = simulate_cohort(cfg).cohort.sessions.size();
  CHECK(dropped < 245);
  CHECK(dropped >= 35);
}

TEST_CASE("simulation configs validate and serialize") {
  SimConfig cfg;
  cfg.generation.count_shift = 3.5;
  cfg.dims = {8, 9, 10};
  CHECK(sim_config_from_json(nlohmann::json::parse(sim_config_to_json(cfg).dump())) == cfg);
  cfg.mci_prevalence = 1.5;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = {};
  cfg.sessions_per_participant = 8;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = {};
  cfg.noise_sd = -1;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  CHECK_THROWS_AS(sim_config_from_json(nlohmann::json{{"seed", "x"}}), ParseError);
}

TEST_CASE("score draws stay in range") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const int v = draw_score(rng, 28.0, 5.0, 26, 30);
    CHECK(v >= 26);
    CHECK(v <= 30);
  }
  CHECK(draw_score(rng, 100.0, 0.0, 0, 25) == 25);
}
