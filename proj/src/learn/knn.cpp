#include "vamci/learn/knn.hpp"

#include <algorithm>
#include <utility>

namespace vamci::learn {

std::vector<std::size_t> KnnModel::neighbors(std::span<const double> row) const {
  std::vector<std::pair<double, std::size_t>> dist(train.rows());
  for (std::size_t i = 0; i < train.rows(); ++i) {
    const auto t = train.row(i);
    double d2 = 0.0;
    for (std::size_t c = 0; c < t.size(); ++c) {
      const double diff = t[c] - row[c];
      d2 += diff * diff;
    }
    dist[i] = {d2, i};
  }
  const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), dist.size());
  std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
  std::vector<std::size_t> out(kk);
  for (std::size_t i = 0; i < kk; ++i) out[i] = dist[i].second;
  return out;
}

double KnnModel::predict(std::span<const double> row) const {
  const auto nn = neighbors(row);
  std::size_t mci = 0;
  for (const auto i : nn) mci += labels[i] > 0.5 ? 1 : 0;
  return 2 * mci >= nn.size() ? 1.0 : 0.0;
}

}  // namespace vamci::learn
