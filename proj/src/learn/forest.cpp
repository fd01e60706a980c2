#include "vamci/learn/forest.hpp"

#include <cmath>
#include <numeric>

namespace vamci::learn {

double ForestModel::predict(std::span<const double> row) const {
  std::size_t mci = 0;
  for (const auto& t : trees) mci += t.predict(row) > 0.5 ? 1 : 0;
  return 2 * mci >= trees.size() ? 1.0 : 0.0;
}

int default_max_features(std::size_t d) {
  auto r = static_cast<int>(std::sqrt(static_cast<double>(d)));
  while (static_cast<std::size_t>(r) * static_cast<std::size_t>(r) < d) ++r;
  return std::max(r, 1);
}

ForestModel grow_forest(const Matrix& x, std::span<const double> y, const Hyperparams& hp,
                        std::uint64_t seed) {
  const std::size_t n = x.rows();
  TreeOptions options;
  options.criterion = SplitCriterion::gini;
  options.max_depth = hp.max_depth;
  options.min_samples_split = hp.min_samples_split;
  options.max_features = hp.max_features ? *hp.max_features : default_max_features(x.cols());

  ForestModel forest;
  forest.trees.reserve(hp.n_trees);
  for (int t = 0; t < hp.n_trees; ++t) {
    const auto tree_seed = derive_seed(seed, {static_cast<std::uint64_t>(t)});
    Rng rng(tree_seed);
    std::vector<std::size_t> samples(n);
    if (hp.bootstrap) {
      std::uniform_int_distribution<std::size_t> draw(0, n - 1);
      for (auto& s : samples) s = draw(rng);
    } else {
      std::iota(samples.begin(), samples.end(), 0);
    }
    forest.trees.push_back(grow_tree(x, y, std::move(samples), options, &rng));
    forest.tree_seeds.push_back(tree_seed);
  }
  return forest;
}

}  // namespace vamci::learn
