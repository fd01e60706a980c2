#include "vamci/sim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vamci/core/catalog.hpp"
#include "vamci/ingest/cohort_io.hpp"

namespace vamci::sim {
namespace {

constexpr std::uint64_t kAnchorKey = 0xa1;
constexpr std::uint64_t kVisitKey = 0xb2;
constexpr std::uint64_t kSessionKey = 0xc3;

EmbeddingMatrix random_unit_rows(std::size_t n, std::uint32_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<float> data;
  data.reserve(n * d);
  std::vector<double> v(d);
  for (std::size_t r = 0; r < n; ++r) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : v) {
        x = normal(rng);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (const double x : v) data.push_back(static_cast<float>(x / norm));
  }
  return EmbeddingMatrix(static_cast<std::uint32_t>(n), d, std::move(data));
}

int negative_binomial(Rng& rng, double mean, double size) {
  if (mean <= 0.0) return 0;
  std::gamma_distribution<double> gamma(size, mean / size);
  const double lambda = gamma(rng);
  if (lambda <= 0.0) return 0;
  std::poisson_distribution<int> poisson(lambda);
  return poisson(rng);
}

int poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<int> p(mean);
  return p(rng);
}

std::string participant_name(int p, int n) {
  const auto width = std::max<std::size_t>(2, std::to_string(n).size());
  auto digits = std::to_string(p + 1);
  return "P" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

MocaAssessment draw_moca(Rng& rng, const MocaModel& model, bool mci) {
  auto draw = [&](const ScoreModel& s, int lo, int hi) {
    return mci ? draw_score(rng, s.mci_mean, s.mci_sd, lo, hi) : draw_score(rng, s.hc_mean, s.hc_sd, lo, hi);
  };
  MocaScores scores;
  scores.total = mci ? draw(model.total, 0, kHealthyThreshold - 1) : draw(model.total, kHealthyThreshold, kMocaTotalMax);
  scores.memory = draw(model.subdomain(Subdomain::memory), 0, subdomain_max(Subdomain::memory));
  scores.executive_function =
      draw(model.subdomain(Subdomain::executive_function), 0, subdomain_max(Subdomain::executive_function));
  scores.attention = draw(model.subdomain(Subdomain::attention), 0, subdomain_max(Subdomain::attention));
  scores.language = draw(model.subdomain(Subdomain::language), 0, subdomain_max(Subdomain::language));
  scores.visuospatial = draw(model.subdomain(Subdomain::visuospatial), 0, subdomain_max(Subdomain::visuospatial));
  scores.orientation = draw(model.subdomain(Subdomain::orientation), 0, subdomain_max(Subdomain::orientation));
  return MocaAssessment(scores);
}

enum class Slot { participant, assistant, asr_error };

Session make_session(const SimConfig& cfg, const std::array<EmbeddingMatrix, 3>& anchor_emb,
                     const std::vector<AnchorEntry>& entries, const std::string& pid, int p, int s, Task task,
                     bool mci, const MocaAssessment& moca) {
  Rng rng(derive_seed(cfg.seed, {kSessionKey, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(s),
                                 static_cast<std::uint64_t>(task)}));
  const auto& tm = cfg.task_model(task);
  const std::size_t n_anchor = entries.size();
  std::uniform_int_distribution<std::size_t> any_anchor(0, n_anchor - 1);

  std::vector<std::pair<Slot, std::size_t>> slots;
  for (std::size_t a = 0; a < n_anchor; ++a) slots.emplace_back(Slot::participant, a);
  const int extras = negative_binomial(rng, tm.extra_mean + (mci ? tm.count_shift : 0.0), tm.dispersion);
  for (int e = 0; e < extras; ++e) slots.emplace_back(Slot::participant, any_anchor(rng));
  auto insert_random = [&](Slot kind, std::size_t anchor) {
    std::uniform_int_distribution<std::size_t> pos(0, slots.size());
    slots.insert(slots.begin() + static_cast<std::ptrdiff_t>(pos(rng)), {kind, anchor});
  };
  const int n_assistant = poisson(rng, cfg.assistant_mean);
  for (int i = 0; i < n_assistant; ++i) insert_random(Slot::assistant, any_anchor(rng));
  const int n_asr = poisson(rng, cfg.asr_error_mean);
  for (int i = 0; i < n_asr; ++i) insert_random(Slot::asr_error, any_anchor(rng));

  const double sigma = cfg.noise_sd + (mci ? tm.noise_shift : 0.0);
  Session session;
  session.participant_id = pid;
  session.session_index = s;
  session.task = task;
  session.moca = moca;
  std::array<std::vector<float>, 3> data;
  std::size_t row = 0;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto [kind, a] = slots[k];
    Command c;
    char id[32];
    std::snprintf(id, sizeof id, "c%03zu", k + 1);
    c.command_id = id;
    c.category = entries[a].category;
    if (kind == Slot::asr_error) {
      c.speaker = Speaker::participant;
      c.status = CommandStatus::asr_error;
      c.transcript = "audio could not be understood";
      c.category.reset();
      session.commands.push_back(std::move(c));
      continue;
    }
    c.speaker = kind == Slot::participant ? Speaker::participant : Speaker::assistant;
    c.transcript = kind == Slot::assistant ? "Demonstration: " + entries[a].anchor_text
                   : task == Task::reading ? entries[a].anchor_text
                                           : entries[a].intent_text + " (generated)";
    c.status = CommandStatus::ok;
    c.embedding_row = row++;
    for (const auto m : kModalities) {
      const auto mi = static_cast<std::size_t>(m);
      const auto d = anchor_emb[mi].cols();
      std::normal_distribution<double> noise(0.0, sigma / std::sqrt(static_cast<double>(d)));
      const auto base = anchor_emb[mi].row(a);
      for (std::uint32_t col = 0; col < d; ++col) data[mi].push_back(static_cast<float>(base[col] + noise(rng)));
    }
    session.commands.push_back(std::move(c));
  }
  for (const auto m : kModalities) {
    const auto mi = static_cast<std::size_t>(m);
    session.embedding(m) = EmbeddingMatrix(static_cast<std::uint32_t>(row), anchor_emb[mi].cols(), std::move(data[mi]));
  }
  return session;
}

}  // namespace

int draw_score(Rng& rng, double mean, double sd, int lo, int hi) {
  std::normal_distribution<double> normal(mean, sd);
  double v = mean;
  for (int attempt = 0; attempt < 100; ++attempt) {
    v = std::round(sd > 0.0 ? normal(rng) : mean);
    if (v >= lo && v <= hi) return static_cast<int>(v);
  }
  return static_cast<int>(std::clamp(v, static_cast<double>(lo), static_cast<double>(hi)));
}

SimulatedCohort simulate_cohort(const SimConfig& cfg) {
  validate(cfg);
  const auto& entries = default_anchor_catalog();
  std::array<EmbeddingMatrix, 3> anchor_emb;
  for (const auto m : kModalities) {
    anchor_emb[static_cast<std::size_t>(m)] =
        random_unit_rows(entries.size(), cfg.dim(m), derive_seed(cfg.seed, {kAnchorKey, static_cast<std::uint64_t>(m)}));
  }

  Cohort cohort;
  cohort.provenance = Provenance::simulated;
  for (int p = 0; p < cfg.n_participants; ++p) {
    const auto pid = participant_name(p, cfg.n_participants);
    for (int s = 1; s <= cfg.sessions_per_participant; ++s) {
      Rng visit(derive_seed(cfg.seed, {kVisitKey, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(s)}));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double skip = unit(visit);
      if (s > 1 && skip < cfg.dropout) continue;
      const bool mci = unit(visit) < cfg.mci_prevalence;
      const auto moca = draw_moca(visit, cfg.moca, mci);
      for (const auto task : cfg.tasks) {
        cohort.sessions.push_back(make_session(cfg, anchor_emb, entries, pid, p, s, task, mci, moca));
      }
    }
  }
  validate(cohort);
  return {std::move(cohort), intent::AnchorSet(entries, anchor_emb[static_cast<std::size_t>(Modality::sentence)])};
}

void write_simulation(const std::filesystem::path& dir, const SimulatedCohort& sim) {
  std::filesystem::create_directories(dir);
  intent::write_anchor_set(dir / "anchors.json", sim.anchors, "anchors.vaef");
  ingest::write_cohort(dir, sim.cohort);
}

}  // namespace vamci::sim
