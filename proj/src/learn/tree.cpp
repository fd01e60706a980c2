#include "vamci/learn/tree.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace vamci::learn {
namespace {

// Gini splits are compared exactly. Minimizing weighted child Gini is equivalent to
// maximizing  A_l/n_l + A_r/n_r  with A = m^2 + (n-m)^2, held as a fraction.
__extension__ typedef unsigned __int128 u128;

struct Purity {
  u128 num = 0;
  u128 den = 1;
};

bool purer(const Purity& a, const Purity& b) { return a.num * b.den > b.num * a.den; }

Purity gini_purity(std::uint64_t n_l, std::uint64_t m_l, std::uint64_t n_r, std::uint64_t m_r) {
  const std::uint64_t a_l = m_l * m_l + (n_l - m_l) * (n_l - m_l);
  const std::uint64_t a_r = m_r * m_r + (n_r - m_r) * (n_r - m_r);
  Purity p;
  p.num = static_cast<u128>(a_l) * n_r + static_cast<u128>(a_r) * n_l;
  p.den = static_cast<u128>(n_l) * n_r;
  return p;
}

double midpoint(double a, double b) {
  const double t = a + (b - a) / 2.0;
  return t < b ? t : a;
}

struct Split {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  Purity purity;          // gini
  double sse = 0.0;       // variance
};

class Builder {
 public:
  Builder(const Matrix& x, std::span<const double> y, const TreeOptions& options, Rng* rng)
      : x_(x), y_(y), options_(options), rng_(rng) {
    model_.n_features = x.cols();
    features_.resize(x.cols());
    std::iota(features_.begin(), features_.end(), 0);
  }

  TreeModel take() { return std::move(model_); }

  int build(std::vector<std::size_t>& idx, int depth) {
    const int node_id = static_cast<int>(model_.nodes.size());
    model_.nodes.emplace_back();
    TreeNode node;
    node.samples = idx.size();

    bool pure = true;
    if (options_.criterion == SplitCriterion::gini) {
      std::size_t mci = 0;
      for (const auto i : idx) mci += y_[i] > 0.5 ? 1 : 0;
      node.value = 2 * mci >= idx.size() ? 1.0 : 0.0;
      pure = mci == 0 || mci == idx.size();
    } else {
      double sum = 0.0;
      for (const auto i : idx) {
        sum += y_[i];
        if (y_[i] != y_[idx.front()]) pure = false;
      }
      node.value = sum / static_cast<double>(idx.size());
    }

    const bool depth_exhausted = options_.max_depth && depth >= *options_.max_depth;
    if (!pure && !depth_exhausted && static_cast<int>(idx.size()) >= options_.min_samples_split) {
      const Split split = find_split(idx);
      if (split.found) {
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (const auto i : idx) {
          (x_(i, split.feature) <= split.threshold ? left : right).push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = build(left, depth + 1);
        node.right = build(right, depth + 1);
      }
    }
    model_.nodes[node_id] = node;
    return node_id;
  }

 private:
  // Evaluates one feature and updates `best` if it offers a strictly better split.
  // Returns whether the feature admits any split at all.
  bool scan_feature(const std::vector<std::size_t>& idx, int f, Split& best) {
    scratch_.clear();
    for (const auto i : idx) scratch_.emplace_back(x_(i, f), y_[i]);
    std::sort(scratch_.begin(), scratch_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t n = scratch_.size();
    if (scratch_.front().first == scratch_.back().first) return false;

    if (options_.criterion == SplitCriterion::gini) {
      std::uint64_t total_mci = 0;
      for (const auto& [v, t] : scratch_) total_mci += t > 0.5 ? 1 : 0;
      std::uint64_t left_mci = 0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_mci += scratch_[k].second > 0.5 ? 1 : 0;
        if (!(scratch_[k].first < scratch_[k + 1].first)) continue;
        const std::uint64_t n_l = k + 1;
        const auto p = gini_purity(n_l, left_mci, n - n_l, total_mci - left_mci);
        if (!best.found || purer(p, best.purity)) {
          best = {true, f, midpoint(scratch_[k].first, scratch_[k + 1].first), p, 0.0};
        }
      }
    } else {
      double total = 0.0;
      double total_sq = 0.0;
      for (const auto& [v, t] : scratch_) {
        total += t;
        total_sq += t * t;
      }
      double s = 0.0;
      double sq = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        s += scratch_[k].second;
        sq += scratch_[k].second * scratch_[k].second;
        if (!(scratch_[k].first < scratch_[k + 1].first)) continue;
        const double n_l = static_cast<double>(k + 1);
        const double n_r = static_cast<double>(n - k - 1);
        const double sse = (sq - s * s / n_l) + ((total_sq - sq) - (total - s) * (total - s) / n_r);
        if (!best.found || sse < best.sse) {
          best = {true, f, midpoint(scratch_[k].first, scratch_[k + 1].first), {}, sse};
        }
      }
    }
    return true;
  }

  Split find_split(const std::vector<std::size_t>& idx) {
    Split best;
    const int d = static_cast<int>(x_.cols());
    const int wanted = options_.max_features ? std::min(*options_.max_features, d) : d;
    if (wanted >= d) {
      for (int f = 0; f < d; ++f) scan_feature(idx, f, best);
      return best;
    }
    // Random candidate subset, scanned in ascending index order; if none of them can
    // split this node, keep drawing features one at a time until one can.
    for (int k = 0; k < d - 1; ++k) {
      std::uniform_int_distribution<int> pick(k, d - 1);
      std::swap(features_[k], features_[pick(*rng_)]);
    }
    std::vector<int> candidates(features_.begin(), features_.begin() + wanted);
    std::sort(candidates.begin(), candidates.end());
    for (const int f : candidates) scan_feature(idx, f, best);
    for (int k = wanted; k < d && !best.found; ++k) scan_feature(idx, features_[k], best);
    return best;
  }

  const Matrix& x_;
  std::span<const double> y_;
  const TreeOptions& options_;
  Rng* rng_;
  TreeModel model_;
  std::vector<int> features_;
  std::vector<std::pair<double, double>> scratch_;
};

}  // namespace

double TreeModel::predict(std::span<const double> row) const {
  int id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& n = nodes[id];
    id = row[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[id].value;
}

std::size_t TreeModel::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes[id].is_leaf()) {
      stack.emplace_back(nodes[id].left, d + 1);
      stack.emplace_back(nodes[id].right, d + 1);
    }
  }
  return best;
}

TreeModel grow_tree(const Matrix& x, std::span<const double> y, std::vector<std::size_t> samples,
                    const TreeOptions& options, Rng* rng) {
  Builder builder(x, y, options, rng);
  builder.build(samples, 0);
  return builder.take();
}

}  // namespace vamci::learn
