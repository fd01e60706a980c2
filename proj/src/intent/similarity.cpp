#include "vamci/intent/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vamci::intent {
namespace {

template <typename T>
double dot(std::span<const T> a, std::span<const T> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<double>(a[k]) * static_cast<double>(b[k]);
  return s;
}

template <typename T>
double norm(std::span<const T> a) {
  return std::sqrt(dot(a, a));
}

// Shared by the scalar and matrix paths so both produce identical bits.
double cosine_from_parts(double d, double norm_a, double norm_b) {
  return std::clamp(d / (norm_a * norm_b), -1.0, 1.0);
}

template <typename T>
double cosine_impl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw ValidationError("cosine_similarity: length mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (!(na > 0.0)) throw ZeroNormError("first argument", 0);
  if (!(nb > 0.0)) throw ZeroNormError("second argument", 0);
  return cosine_from_parts(dot(a, b), na, nb);
}

}  // namespace

ZeroNormError::ZeroNormError(std::string source, std::size_t row)
    : ValidationError("zero-norm vector in " + source + " (row " + std::to_string(row) + ")"),
      source_(std::move(source)),
      row_(row) {}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  return cosine_impl(a, b);
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  return cosine_impl(a, b);
}

Matrix similarity_matrix(const AnchorSet& anchors, const EmbeddingMatrix& commands) {
  const auto& anchor_emb = anchors.embeddings();
  if (anchor_emb.cols() != commands.cols()) {
    throw ValidationError("similarity_matrix: anchor width " + std::to_string(anchor_emb.cols()) +
                          " != command width " + std::to_string(commands.cols()));
  }
  const std::size_t n = anchors.size();
  const std::size_t m = commands.rows();

  std::vector<double> anchor_norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    anchor_norms[i] = norm(anchor_emb.row(i));
    if (!(anchor_norms[i] > 0.0)) throw ZeroNormError("anchors", i);
  }

  Matrix sim(m, n);
  for (std::size_t j = 0; j < m; ++j) {
    const auto cmd = commands.row(j);
    const double cmd_norm = norm(cmd);
    if (!(cmd_norm > 0.0)) throw ZeroNormError("commands", j);
    for (std::size_t i = 0; i < n; ++i) {
      sim(j, i) = cosine_from_parts(dot(cmd, anchor_emb.row(i)), cmd_norm, anchor_norms[i]);
    }
  }
  return sim;
}

}  // namespace vamci::intent
