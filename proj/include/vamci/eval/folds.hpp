#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vamci/core/model.hpp"

namespace vamci::eval {

struct FoldPlan {
  std::size_t n_samples = 0;
  std::vector<std::vector<std::size_t>> folds;  // each sorted ascending
  int round = 0;
  std::uint64_t seed = 0;

  std::size_t k() const { return folds.size(); }
  // Every index outside fold f, ascending.
  std::vector<std::size_t> train_indices(std::size_t f) const;
};

// Participant-grouped, label-stratified k-fold split. All rows sharing a group id land in
// the same fold. Groups are shuffled by (seed, round), placed largest first into the
// currently smallest fold (ties: the fold whose MCI share stays closest to the overall
// share, then the lowest index), and then rebalanced by group moves and swaps that
// shrink the spread of fold sizes. `labels` may be empty (no stratification).
// Throws ValidationError when there are fewer distinct groups than k, or k < 2.
FoldPlan make_folds(std::span<const std::string> groups, std::span<const Diagnosis> labels, std::size_t k,
                    int round, std::uint64_t seed);

std::size_t count_groups(std::span<const std::string> groups);

}  // namespace vamci::eval
