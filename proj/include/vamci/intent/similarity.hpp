#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "vamci/core/embedding.hpp"
#include "vamci/core/error.hpp"
#include "vamci/core/matrix.hpp"
#include "vamci/intent/anchors.hpp"

namespace vamci::intent {

class ZeroNormError : public ValidationError {
 public:
  ZeroNormError(std::string source, std::size_t row);
  const std::string& source() const { return source_; }
  std::size_t row() const { return row_; }

 private:
  std::string source_;
  std::size_t row_;
};

// dot(a,b) / (|a| |b|), accumulated in double and clamped to [-1, 1].
// Throws ValidationError on a length mismatch and ZeroNormError on a zero vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(std::span<const float> a, std::span<const float> b);

// m x n matrix with entry (j, i) = cosine_similarity(command j, anchor i).
Matrix similarity_matrix(const AnchorSet& anchors, const EmbeddingMatrix& commands);

}  // namespace vamci::intent
