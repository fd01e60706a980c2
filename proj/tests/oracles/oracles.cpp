#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

IntentResult intent_features(const Rows& commands, const Rows& anchors) {
  IntentResult r{std::vector<std::size_t>(anchors.size(), 0), std::vector<double>(anchors.size(), 0.0)};
  std::vector<double> sums(anchors.size(), 0.0);
  for (const auto& c : commands) {
    std::size_t best = 0;
    double best_sim = -2.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      double dot = 0.0, nc = 0.0, na = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        dot += c[k] * anchors[i][k];
        nc += c[k] * c[k];
        na += anchors[i][k] * anchors[i][k];
      }
      const double sim = dot / (std::sqrt(nc) * std::sqrt(na));
      if (sim > best_sim) {
        best_sim = sim;
        best = i;
      }
    }
    r.qty[best] += 1;
    sums[best] += best_sim;
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (r.qty[i] > 0) r.qlt[i] = sums[i] / static_cast<double>(r.qty[i]);
  }
  return r;
}

namespace {

struct Fraction {
  long long num;
  long long den;
};

bool less(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }

// n * weighted Gini of a split, as a fraction.
Fraction split_impurity(long long nl, long long ml, long long nr, long long mr) {
  const long long gl = nl * nl - (ml * ml + (nl - ml) * (nl - ml));  // nl^2 * gini_l
  const long long gr = nr * nr - (mr * mr + (nr - mr) * (nr - mr));
  return {gl * nr + gr * nl, nl * nr};
}

int grow(std::vector<TreeNode>& nodes, const Rows& x, const std::vector<int>& y, const std::vector<std::size_t>& idx,
         int depth, std::optional<int> max_depth) {
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();
  long long mci = 0;
  for (const auto i : idx) mci += y[i];
  const long long n = static_cast<long long>(idx.size());
  nodes[id].value = 2 * mci >= n ? 1.0 : 0.0;
  if (mci == 0 || mci == n || (max_depth && depth >= *max_depth) || n < 2) return id;

  bool found = false;
  int best_f = -1;
  double best_t = 0.0;
  Fraction best{0, 1};
  for (std::size_t f = 0; f < x[0].size(); ++f) {
    std::vector<double> values;
    for (const auto i : idx) values.push_back(x[i][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      double t = values[v] + (values[v + 1] - values[v]) / 2.0;
      if (!(t < values[v + 1])) t = values[v];
      long long nl = 0, ml = 0;
      for (const auto i : idx) {
        if (x[i][f] <= t) {
          ++nl;
          ml += y[i];
        }
      }
      const Fraction imp = split_impurity(nl, ml, n - nl, mci - ml);
      if (!found || less(imp, best)) {
        found = true;
        best = imp;
        best_f = static_cast<int>(f);
        best_t = t;
      }
    }
  }
  if (!found) return id;
  std::vector<std::size_t> left, right;
  for (const auto i : idx) (x[i][best_f] <= best_t ? left : right).push_back(i);
  nodes[id].feature = best_f;
  nodes[id].threshold = best_t;
  const int l = grow(nodes, x, y, left, depth + 1, max_depth);
  const int r = grow(nodes, x, y, right, depth + 1, max_depth);
  nodes[id].left = l;
  nodes[id].right = r;
  return id;
}

std::vector<double> project(const std::vector<double>& v, const std::vector<double>& s, double c) {
  auto at = [&](double mu) {
    std::vector<double> b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = std::clamp(v[i] - mu * s[i], 0.0, c);
    return b;
  };
  auto g = [&](double mu) {
    const auto b = at(mu);
    double sum = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) sum += s[i] * b[i];
    return sum;
  };
  double lo = -1.0, hi = 1.0;
  while (g(lo) < 0.0) lo *= 2.0;
  while (g(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

double dual_value(const Rows& q, const std::vector<double>& p, const std::vector<double>& b) {
  double v = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    double qb = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) qb += q[i][j] * b[j];
    v += 0.5 * b[i] * qb + p[i] * b[i];
  }
  return v;
}

}  // namespace

std::vector<TreeNode> gini_tree(const Rows& x, const std::vector<int>& y, std::optional<int> max_depth) {
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  grow(nodes, x, y, idx, 0, max_depth);
  return nodes;
}

double tree_predict(const std::vector<TreeNode>& nodes, const std::vector<double>& row) {
  int id = 0;
  while (nodes[id].feature >= 0) id = row[nodes[id].feature] <= nodes[id].threshold ? nodes[id].left : nodes[id].right;
  return nodes[id].value;
}

double dual_minimum(const Rows& q, const std::vector<double>& p, const std::vector<double>& s, double c,
                    int iterations) {
  const std::size_t l = p.size();
  // Lipschitz constant by power iteration (Q is positive semidefinite).
  std::vector<double> v(l, 1.0);
  double lip = 1.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> w(l, 0.0);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) w[i] += q[i][j] * v[j];
    double norm = 0.0;
    for (const double e : w) norm += e * e;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    lip = norm;
    for (std::size_t i = 0; i < l; ++i) v[i] = w[i] / norm;
  }
  lip *= 1.01;

  std::vector<double> b = project(std::vector<double>(l, 0.0), s, c);
  std::vector<double> yk = b;
  double t = 1.0;
  double best = dual_value(q, p, b);
  double last = best;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> grad(l, 0.0);
    for (std::size_t i = 0; i < l; ++i) {
      grad[i] = p[i];
      for (std::size_t j = 0; j < l; ++j) grad[i] += q[i][j] * yk[j];
    }
    std::vector<double> step(l);
    for (std::size_t i = 0; i < l; ++i) step[i] = yk[i] - grad[i] / lip;
    const auto next = project(step, s, c);
    const double value = dual_value(q, p, next);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (value > last) {
      // adaptive restart
      t = 1.0;
      yk = b;
      continue;
    }
    for (std::size_t i = 0; i < l; ++i) yk[i] = next[i] + ((t - 1.0) / tn) * (next[i] - b[i]);
    b = next;
    t = tn;
    last = value;
    best = std::min(best, value);
  }
  return best;
}

double svm_optimum(const Rows& z, const std::vector<double>& y, double c) {
  const std::size_t n = z.size();
  Rows q(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double k = 0.0;
      for (std::size_t f = 0; f < z[i].size(); ++f) k += z[i][f] * z[j][f];
      q[i][j] = y[i] * y[j] * k;
    }
  return -dual_minimum(q, std::vector<double>(n, -1.0), y, c, 40000);
}

double svr_optimum(const Rows& z, const std::vector<double>& y, double c, double epsilon) {
  const std::size_t n = z.size();
  Rows q(2 * n, std::vector<double>(2 * n, 0.0));
  std::vector<double> s(2 * n), p(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    s[i] = i < n ? 1.0 : -1.0;
    p[i] = i < n ? epsilon - y[i] : epsilon + y[i - n];
  }
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) {
      double k = 0.0;
      for (std::size_t f = 0; f < z[i % n].size(); ++f) k += z[i % n][f] * z[j % n][f];
      q[i][j] = s[i] * s[j] * k;
    }
  return -dual_minimum(q, p, s, c, 40000);
}

std::vector<double> ridge(const Rows& x, const std::vector<double>& y, double lambda) {
  const std::size_t n = x.size();
  const std::size_t d = x[0].size();
  std::vector<long double> mean(d, 0.0L);
  long double ymean = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    ymean += y[i];
    for (std::size_t f = 0; f < d; ++f) mean[f] += x[i][f];
  }
  ymean /= n;
  for (auto& m : mean) m /= n;
  // augmented system [A | r]
  std::vector<std::vector<long double>> a(d, std::vector<long double>(d + 1, 0.0L));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < d; ++f) {
      const long double xf = x[i][f] - mean[f];
      for (std::size_t g = 0; g < d; ++g) a[f][g] += xf * (x[i][g] - mean[g]);
      a[f][d] += xf * (y[i] - ymean);
    }
  for (std::size_t f = 0; f < d; ++f) a[f][f] += lambda;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    if (a[col][col] == 0.0L) throw std::runtime_error("oracle::ridge: singular system");
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const long double factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= d; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  std::vector<double> out(d + 1);
  long double intercept = ymean;
  for (std::size_t f = 0; f < d; ++f) {
    const long double w = a[f][d] / a[f][f];
    out[f] = static_cast<double>(w);
    intercept -= w * mean[f];
  }
  out[d] = static_cast<double>(intercept);
  return out;
}

}  // namespace oracle
