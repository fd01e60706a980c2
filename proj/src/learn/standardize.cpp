#include "vamci/learn/standardize.hpp"

#include <cmath>

namespace vamci::learn {

Standardizer Standardizer::fit(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Standardizer s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  if (n == 0) return s;
  for (std::size_t c = 0; c < d; ++c) {
    double sum = 0.0;
    double lo = x(0, c);
    double hi = x(0, c);
    for (std::size_t r = 0; r < n; ++r) {
      sum += x(r, c);
      lo = std::min(lo, x(r, c));
      hi = std::max(hi, x(r, c));
    }
    const double mean = sum / static_cast<double>(n);
    if (lo == hi) {
      s.mean[c] = lo;
      continue;
    }
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dev = x(r, c) - mean;
      ss += dev * dev;
    }
    s.mean[c] = mean;
    s.scale[c] = std::sqrt(ss / static_cast<double>(n));
  }
  return s;
}

void Standardizer::transform_row(std::span<const double> in, std::span<double> out) const {
  for (std::size_t c = 0; c < mean.size(); ++c) {
    out[c] = scale[c] > 0.0 ? (in[c] - mean[c]) / scale[c] : 0.0;
  }
}

Matrix Standardizer::transform(const Matrix& x) const {
  Matrix z(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) transform_row(x.row(r), z.row(r));
  return z;
}

}  // namespace vamci::learn
