#pragma once

#include <span>
#include <vector>

#include "vamci/core/matrix.hpp"

namespace vamci::learn {

// Per-feature z-scoring with population statistics. Features that are constant on the
// training set get scale 0 and always map to 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Matrix& x);

  std::size_t dim() const { return mean.size(); }
  void transform_row(std::span<const double> in, std::span<double> out) const;
  Matrix transform(const Matrix& x) const;

  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

}  // namespace vamci::learn
