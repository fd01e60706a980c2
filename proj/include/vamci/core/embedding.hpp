#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vamci {

// rows x cols matrix of 32-bit per-command (or per-anchor) embeddings, row-major.
// Every value is finite; construction rejects anything else.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::uint32_t rows, std::uint32_t cols, std::vector<float> data);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::span<const float> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<float>& data() const { return data_; }

  // Copies the listed rows in order.
  EmbeddingMatrix select_rows(std::span<const std::size_t> indices) const;

  // Bitwise equality (distinguishes -0.0 from 0.0).
  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b);

 private:
  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 1;
  std::vector<float> data_;
};

// Widths produced by the upstream encoders; other widths are accepted with a warning.
inline constexpr std::uint32_t kTextualWidth = 768;
inline constexpr std::uint32_t kAudioWidth = 1024;

bool is_standard_width(std::uint32_t cols);

}  // namespace vamci
