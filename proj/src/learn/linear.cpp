#include "vamci/learn/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace vamci::learn {
namespace {

Matrix gram(const Matrix& z) {
  const std::size_t n = z.rows();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto zi = z.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto zj = z.row(j);
      double v = 0.0;
      for (std::size_t c = 0; c < zi.size(); ++c) v += zi[c] * zj[c];
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

std::vector<double> scores(const Matrix& z, const std::vector<double>& w) {
  std::vector<double> f(z.rows());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const auto zi = z.row(i);
    double v = 0.0;
    for (std::size_t c = 0; c < w.size(); ++c) v += zi[c] * w[c];
    f[i] = v;
  }
  return f;
}

// The loss is convex and piecewise linear in b once w is fixed, so its minimum is attained
// at a breakpoint. The middle of the optimal interval is returned, so the offset does not
// depend on where the dual solver happened to stop inside a flat stretch.
template <typename Loss>
double refine_offset(const std::vector<double>& breakpoints, Loss loss) {
  double best = std::numeric_limits<double>::infinity();
  for (const double t : breakpoints) best = std::min(best, loss(t));
  const double slack = 1e-12 * std::max(1.0, std::abs(best));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const double t : breakpoints) {
    if (loss(t) <= best + slack) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  return lo + (hi - lo) / 2.0;
}

double hinge_sum(std::span<const double> y, const std::vector<double>& f, double b) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::max(0.0, 1.0 - y[i] * (f[i] + b));
  return s;
}

double tube_sum(std::span<const double> y, const std::vector<double>& f, double b, double eps) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::max(0.0, std::abs(y[i] - f[i] - b) - eps);
  return s;
}

double half_norm2(const std::vector<double>& w) {
  double s = 0.0;
  for (const double v : w) s += v * v;
  return 0.5 * s;
}

}  // namespace

double LinearModel::decision(std::span<const double> row) const {
  double v = b;
  for (std::size_t c = 0; c < w.size(); ++c) v += w[c] * row[c];
  return v;
}

LinearModel fit_linear_svm(const Matrix& z, std::span<const double> y, double c, double tol,
                           int max_iter, SolverTrace* trace) {
  const std::size_t n = z.rows();
  const Matrix k = gram(z);
  DualProblem problem{Matrix(n, n), std::vector<double>(n, -1.0), std::vector<double>(y.begin(), y.end()), c};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) problem.q(i, j) = y[i] * y[j] * k(i, j);
  }
  const auto sol = solve_dual(problem, tol, max_iter, trace);

  LinearModel m;
  m.w.assign(z.cols(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double coef = sol.beta[i] * y[i];
    if (coef == 0.0) continue;
    const auto zi = z.row(i);
    for (std::size_t col = 0; col < m.w.size(); ++col) m.w[col] += coef * zi[col];
  }
  const auto f = scores(z, m.w);
  std::vector<double> breaks(n);
  for (std::size_t i = 0; i < n; ++i) breaks[i] = y[i] - f[i];
  m.b = refine_offset(breaks, [&](double b) { return hinge_sum(y, f, b); });
  return m;
}

LinearModel fit_svr(const Matrix& z, std::span<const double> y, double c, double epsilon, double tol,
                    int max_iter, SolverTrace* trace) {
  const std::size_t n = z.rows();
  const Matrix k = gram(z);
  DualProblem problem{Matrix(2 * n, 2 * n), std::vector<double>(2 * n), std::vector<double>(2 * n), c};
  for (std::size_t i = 0; i < n; ++i) {
    problem.s[i] = 1.0;
    problem.s[i + n] = -1.0;
    problem.p[i] = epsilon - y[i];
    problem.p[i + n] = epsilon + y[i];
  }
  for (std::size_t i = 0; i < 2 * n; ++i) {
    for (std::size_t j = 0; j < 2 * n; ++j) {
      problem.q(i, j) = problem.s[i] * problem.s[j] * k(i % n, j % n);
    }
  }
  const auto sol = solve_dual(problem, tol, max_iter, trace);

  LinearModel m;
  m.w.assign(z.cols(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double coef = sol.beta[i] - sol.beta[i + n];
    if (coef == 0.0) continue;
    const auto zi = z.row(i);
    for (std::size_t col = 0; col < m.w.size(); ++col) m.w[col] += coef * zi[col];
  }
  const auto f = scores(z, m.w);
  std::vector<double> breaks;
  breaks.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    breaks.push_back(y[i] - f[i] - epsilon);
    breaks.push_back(y[i] - f[i] + epsilon);
  }
  m.b = refine_offset(breaks, [&](double b) { return tube_sum(y, f, b, epsilon); });
  return m;
}

LinearModel fit_ridge(const Matrix& z, std::span<const double> y, double lambda) {
  const auto n = static_cast<Eigen::Index>(z.rows());
  const auto d = static_cast<Eigen::Index>(z.cols());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) x(r, c) = z(r, c);
  }
  Eigen::VectorXd t(n);
  for (Eigen::Index r = 0; r < n; ++r) t(r) = y[r];

  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = t.mean();
  x.rowwise() -= x_mean;
  t.array() -= y_mean;

  Eigen::VectorXd w;
  if (lambda == 0.0) {
    w = x.completeOrthogonalDecomposition().solve(t);
  } else if (d <= n) {
    Eigen::MatrixXd a = x.transpose() * x;
    a.diagonal().array() += lambda;
    w = a.ldlt().solve(x.transpose() * t);
  } else {
    Eigen::MatrixXd a = x * x.transpose();
    a.diagonal().array() += lambda;
    w = x.transpose() * a.ldlt().solve(t);
  }

  LinearModel m;
  m.w.assign(w.data(), w.data() + d);
  m.b = y_mean - x_mean.dot(w);
  return m;
}

double svm_primal_objective(const Matrix& z, std::span<const double> y, const LinearModel& m, double c) {
  return half_norm2(m.w) + c * hinge_sum(y, scores(z, m.w), m.b);
}

double svr_primal_objective(const Matrix& z, std::span<const double> y, const LinearModel& m, double c,
                            double epsilon) {
  return half_norm2(m.w) + c * tube_sum(y, scores(z, m.w), m.b, epsilon);
}

}  // namespace vamci::learn
