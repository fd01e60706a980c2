#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vamci/learn/hyperparams.hpp"
#include "vamci/learn/tree.hpp"

namespace vamci::learn {

struct ForestModel {
  std::vector<TreeModel> trees;
  std::vector<std::uint64_t> tree_seeds;  // derive_seed(master, {tree index})

  // Majority vote over trees; ties go to MCI (1.0).
  double predict(std::span<const double> row) const;
  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

// Default per-split candidate count: ceil(sqrt(d)).
int default_max_features(std::size_t d);

// y holds 1.0 (MCI) / 0.0 (HC). Each tree draws N rows with replacement (unless
// hp.bootstrap is false) from its own stream, so trees are independent of build order.
ForestModel grow_forest(const Matrix& x, std::span<const double> y, const Hyperparams& hp,
                        std::uint64_t seed);

}  // namespace vamci::learn
