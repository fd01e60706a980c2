#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vamci/core/matrix.hpp"
#include "vamci/core/random.hpp"

namespace vamci::learn {

// Internal nodes route x[feature] <= threshold to `left`. Leaves have feature == -1 and
// carry the prediction: 1.0 (MCI) / 0.0 (HC) for classification, the mean target otherwise.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  std::size_t samples = 0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t n_features = 0;

  double predict(std::span<const double> row) const;
  std::size_t depth() const;
  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

enum class SplitCriterion { gini, variance };

struct TreeOptions {
  SplitCriterion criterion = SplitCriterion::gini;
  std::optional<int> max_depth;     // nullopt = grow until pure or unsplittable
  int min_samples_split = 2;
  std::optional<int> max_features;  // per-split candidate count; nullopt = all features
};

// CART growth on the rows listed in `samples` (duplicates allowed, as in a bootstrap).
// Targets for gini are 1.0 (MCI) / 0.0 (HC). Candidate thresholds are midpoints between
// consecutive distinct sorted values; the best split minimizes the weighted child impurity,
// with ties going to the lowest feature index and then the lowest threshold. Zero-gain splits
// are allowed so that XOR-like structure can be separated. `rng` is needed only when
// max_features subsamples.
TreeModel grow_tree(const Matrix& x, std::span<const double> y, std::vector<std::size_t> samples,
                    const TreeOptions& options, Rng* rng);

}  // namespace vamci::learn
