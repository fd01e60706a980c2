#pragma once

#include <cstddef>
#include <vector>

#include "vamci/core/embedding.hpp"
#include "vamci/core/matrix.hpp"
#include "vamci/intent/anchors.hpp"

namespace vamci::intent {

// Per-anchor quantity (number of collected commands whose best anchor is i) and quality
// (their mean similarity to anchor i, 0 when none). sum(qty) equals the command count.
struct IntentFeatureVector {
  std::vector<std::size_t> qty;
  std::vector<double> qlt;

  std::size_t anchor_count() const { return qty.size(); }
  friend bool operator==(const IntentFeatureVector&, const IntentFeatureVector&) = default;
};

// For each row j of an m x n similarity matrix, the smallest anchor index attaining the row
// maximum. Exact ties therefore go to the lowest index.
std::vector<std::size_t> assign_commands(const Matrix& sim);

// Features from a precomputed similarity matrix with n = sim.cols() anchors (n >= 1).
IntentFeatureVector intent_features(const Matrix& sim, std::size_t anchor_count);

IntentFeatureVector intent_features(const AnchorSet& anchors, const EmbeddingMatrix& commands);

// Width of the concatenated [qty, qlt] vector: 2n.
std::size_t intent_feature_dim(const AnchorSet& anchors);
std::size_t intent_feature_dim(std::size_t anchor_count);

}  // namespace vamci::intent
