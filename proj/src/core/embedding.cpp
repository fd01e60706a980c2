#include "vamci/core/embedding.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "vamci/core/error.hpp"

namespace vamci {

EmbeddingMatrix::EmbeddingMatrix(std::uint32_t rows, std::uint32_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (cols_ == 0) throw ValidationError("embedding matrix must have at least one column");
  if (data_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw ValidationError("embedding data length " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows_) + "x" +
                          std::to_string(cols_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw ValidationError("non-finite embedding value at row " + std::to_string(i / cols_) +
                            ", column " + std::to_string(i % cols_));
    }
  }
}

EmbeddingMatrix EmbeddingMatrix::select_rows(std::span<const std::size_t> indices) const {
  std::vector<float> out;
  out.reserve(indices.size() * cols_);
  for (const auto r : indices) {
    if (r >= rows_) throw ValidationError("row index " + std::to_string(r) + " out of range");
    const auto src = row(r);
    out.insert(out.end(), src.begin(), src.end());
  }
  return EmbeddingMatrix(static_cast<std::uint32_t>(indices.size()), cols_, std::move(out));
}

bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         (a.data_.empty() ||
          std::memcmp(a.data_.data(), b.data_.data(), a.data_.size() * sizeof(float)) == 0);
}

bool is_standard_width(std::uint32_t cols) { return cols == kTextualWidth || cols == kAudioWidth; }

}  // namespace vamci
