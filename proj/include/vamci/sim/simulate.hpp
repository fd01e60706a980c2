#pragma once

#include <filesystem>

#include "vamci/core/model.hpp"
#include "vamci/core/random.hpp"
#include "vamci/intent/anchors.hpp"
#include "vamci/sim/config.hpp"

namespace vamci::sim {

struct SimulatedCohort {
  Cohort cohort;               // provenance = simulated, raw (before preprocessing)
  intent::AnchorSet anchors;   // default catalog entries with random unit sentence embeddings
};

// Each visit (participant, session index) draws one label by prevalence and one MoCA
// record, shared by all tasks of that visit. Per task, commands are the 34 anchors in
// order plus NB-distributed extras on random anchors; every participant command embeds as
// its anchor's vector in each modality plus Gaussian noise of norm-scale
// noise_sd + noise_shift*[MCI]. Assistant turns and failed recognitions are interleaved
// so that preprocessing has something to remove. Deterministic in cfg.seed.
SimulatedCohort simulate_cohort(const SimConfig& cfg);

// Writes <dir>/anchors.json, <dir>/anchors.vaef and the cohort under <dir>/sessions.
void write_simulation(const std::filesystem::path& dir, const SimulatedCohort& sim);

// Draws one score from a label-conditional model: rounded normal, redrawn while outside
// [lo, hi] (bounded number of attempts, then clamped).
int draw_score(Rng& rng, double mean, double sd, int lo, int hi);

}  // namespace vamci::sim
