#pragma once

#include <span>
#include <vector>

#include "vamci/core/matrix.hpp"

namespace vamci::learn {

// Stored (already standardized) training rows with 1.0 (MCI) / 0.0 (HC) labels.
struct KnnModel {
  Matrix train;
  std::vector<double> labels;
  int k = 5;

  // Squared Euclidean distance; distance ties prefer the lower training index and
  // vote ties go to MCI.
  double predict(std::span<const double> row) const;
  // Indices of the k nearest training rows, nearest first.
  std::vector<std::size_t> neighbors(std::span<const double> row) const;

  friend bool operator==(const KnnModel&, const KnnModel&) = default;
};

}  // namespace vamci::learn
