#include "vamci/intent/intent_features.hpp"

#include "vamci/core/error.hpp"
#include "vamci/intent/similarity.hpp"

namespace vamci::intent {

std::vector<std::size_t> assign_commands(const Matrix& sim) {
  std::vector<std::size_t> assignment(sim.rows(), 0);
  if (sim.rows() > 0 && sim.cols() == 0) {
    throw ValidationError("assign_commands: similarity matrix has no anchor columns");
  }
  for (std::size_t j = 0; j < sim.rows(); ++j) {
    const auto row = sim.row(j);
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] > row[best]) best = i;
    }
    assignment[j] = best;
  }
  return assignment;
}

IntentFeatureVector intent_features(const Matrix& sim, std::size_t anchor_count) {
  if (anchor_count == 0) throw ValidationError("intent_features: anchor set is empty");
  if (sim.rows() > 0 && sim.cols() != anchor_count) {
    throw ValidationError("intent_features: similarity matrix has " + std::to_string(sim.cols()) +
                          " columns, expected " + std::to_string(anchor_count));
  }
  IntentFeatureVector out{std::vector<std::size_t>(anchor_count, 0),
                          std::vector<double>(anchor_count, 0.0)};
  const auto assignment = assign_commands(sim);
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const auto i = assignment[j];
    ++out.qty[i];
    out.qlt[i] += sim(j, i);
  }
  for (std::size_t i = 0; i < anchor_count; ++i) {
    if (out.qty[i] > 0) out.qlt[i] /= static_cast<double>(out.qty[i]);
  }
  return out;
}

IntentFeatureVector intent_features(const AnchorSet& anchors, const EmbeddingMatrix& commands) {
  return intent_features(similarity_matrix(anchors, commands), anchors.size());
}

std::size_t intent_feature_dim(std::size_t anchor_count) { return 2 * anchor_count; }

std::size_t intent_feature_dim(const AnchorSet& anchors) { return intent_feature_dim(anchors.size()); }

}  // namespace vamci::intent
