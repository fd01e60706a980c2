#include "vamci/eval/folds.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "vamci/core/error.hpp"
#include "vamci/core/random.hpp"

namespace vamci::eval {
namespace {

struct Group {
  std::vector<std::size_t> rows;
  std::size_t mci = 0;
  std::size_t size() const { return rows.size(); }
};

std::vector<Group> collect_groups(std::span<const std::string> groups, std::span<const Diagnosis> labels) {
  std::vector<Group> out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto [it, inserted] = index.try_emplace(groups[i], out.size());
    if (inserted) out.emplace_back();
    auto& g = out[it->second];
    g.rows.push_back(i);
    if (!labels.empty() && labels[i] == Diagnosis::mci) ++g.mci;
  }
  return out;
}

// Moves and swaps whole groups while they strictly reduce the sum of squared fold sizes.
void rebalance(const std::vector<Group>& groups, std::vector<std::vector<std::size_t>>& members,
               std::vector<std::size_t>& sizes) {
  const std::size_t k = members.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t a = 0; a < k && !improved; ++a) {
      for (std::size_t b = 0; b < k && !improved; ++b) {
        if (sizes[a] <= sizes[b] + 1) continue;
        const std::size_t gap = sizes[a] - sizes[b];
        // Single move: a group of size g improves the balance iff g < gap.
        if (members[a].size() > 1) {
          for (std::size_t pos = 0; pos < members[a].size(); ++pos) {
            const std::size_t g = members[a][pos];
            if (groups[g].size() < gap) {
              sizes[a] -= groups[g].size();
              sizes[b] += groups[g].size();
              members[b].push_back(g);
              members[a].erase(members[a].begin() + static_cast<std::ptrdiff_t>(pos));
              improved = true;
              break;
            }
          }
        }
        if (improved) break;
        // Swap: sizes ga > gb improve the balance iff ga - gb < gap.
        for (std::size_t pa = 0; pa < members[a].size() && !improved; ++pa) {
          for (std::size_t pb = 0; pb < members[b].size(); ++pb) {
            const std::size_t ga = groups[members[a][pa]].size();
            const std::size_t gb = groups[members[b][pb]].size();
            if (ga > gb && ga - gb < gap) {
              sizes[a] = sizes[a] - ga + gb;
              sizes[b] = sizes[b] - gb + ga;
              std::swap(members[a][pa], members[b][pb]);
              improved = true;
              break;
            }
          }
        }
      }
    }
  }
}

}  // namespace

std::vector<std::size_t> FoldPlan::train_indices(std::size_t f) const {
  std::vector<bool> held(n_samples, false);
  for (const auto i : folds[f]) held[i] = true;
  std::vector<std::size_t> out;
  out.reserve(n_samples - folds[f].size());
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (!held[i]) out.push_back(i);
  }
  return out;
}

std::size_t count_groups(std::span<const std::string> groups) {
  return collect_groups(groups, {}).size();
}

FoldPlan make_folds(std::span<const std::string> groups, std::span<const Diagnosis> labels, std::size_t k,
                    int round, std::uint64_t seed) {
  if (!labels.empty() && labels.size() != groups.size()) {
    throw ValidationError("fold plan: " + std::to_string(labels.size()) + " labels for " +
                          std::to_string(groups.size()) + " rows");
  }
  if (k < 2) throw ValidationError("fold plan: k must be at least 2");
  const auto all = collect_groups(groups, labels);
  if (all.size() < k) {
    throw ValidationError("fold plan: " + std::to_string(all.size()) + " participants cannot fill " +
                          std::to_string(k) + " folds");
  }

  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(round)}));
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return all[a].size() > all[b].size(); });

  std::size_t total_mci = 0;
  for (const auto& g : all) total_mci += g.mci;
  const double share = groups.empty() ? 0.0 : static_cast<double>(total_mci) / static_cast<double>(groups.size());

  std::vector<std::vector<std::size_t>> members(k);
  std::vector<std::size_t> sizes(k, 0);
  std::vector<std::size_t> mci(k, 0);
  for (const auto g : order) {
    std::size_t best = 0;
    double best_dev = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
      const double dev = std::abs(static_cast<double>(mci[f] + all[g].mci) -
                                  share * static_cast<double>(sizes[f] + all[g].size()));
      if (f == 0 || sizes[f] < sizes[best] || (sizes[f] == sizes[best] && dev < best_dev)) {
        best = f;
        best_dev = dev;
      }
    }
    members[best].push_back(g);
    sizes[best] += all[g].size();
    mci[best] += all[g].mci;
  }
  rebalance(all, members, sizes);

  FoldPlan plan;
  plan.n_samples = groups.size();
  plan.round = round;
  plan.seed = seed;
  plan.folds.resize(k);
  for (std::size_t f = 0; f < k; ++f) {
    for (const auto g : members[f]) {
      plan.folds[f].insert(plan.folds[f].end(), all[g].rows.begin(), all[g].rows.end());
    }
    std::sort(plan.folds[f].begin(), plan.folds[f].end());
  }
  return plan;
}

}  // namespace vamci::eval
