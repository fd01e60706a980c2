#include "vamci/learn/smo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vamci::learn {
namespace {

constexpr double kTau = 1e-12;

double dual_objective(const std::vector<double>& beta, const std::vector<double>& grad,
                      const std::vector<double>& p) {
  double v = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) v += beta[i] * (grad[i] + p[i]);
  return 0.5 * v;
}

}  // namespace

DualSolution solve_dual(const DualProblem& problem, double tol, int max_iter, SolverTrace* trace) {
  const std::size_t l = problem.p.size();
  const auto& q = problem.q;
  const auto& s = problem.s;
  const double c = problem.c;
  std::vector<double> beta(l, 0.0);
  std::vector<double> grad = problem.p;

  auto at_upper = [&](std::size_t t) { return beta[t] >= c; };
  auto at_lower = [&](std::size_t t) { return beta[t] <= 0.0; };

  if (trace) {
    trace->objective.assign(1, 0.0);
    trace->iterations = 0;
    trace->converged = false;
  }

  int iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    // First index: maximal violating candidate in the "up" direction.
    double gmax = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t i = -1;
    for (std::size_t t = 0; t < l; ++t) {
      if (s[t] > 0) {
        if (!at_upper(t) && -grad[t] >= gmax) { gmax = -grad[t]; i = static_cast<std::ptrdiff_t>(t); }
      } else {
        if (!at_lower(t) && grad[t] >= gmax) { gmax = grad[t]; i = static_cast<std::ptrdiff_t>(t); }
      }
    }
    // Second index: largest guaranteed decrease under the second-order model.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_decrease = std::numeric_limits<double>::infinity();
    std::ptrdiff_t j = -1;
    for (std::size_t t = 0; t < l; ++t) {
      double diff = 0.0;
      double quad = 0.0;
      if (s[t] > 0) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad[t]);
        if (i < 0) continue;
        diff = gmax + grad[t];
        quad = q(i, i) + q(t, t) - 2.0 * s[i] * q(i, t);
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad[t]);
        if (i < 0) continue;
        diff = gmax - grad[t];
        quad = q(i, i) + q(t, t) + 2.0 * s[i] * q(i, t);
      }
      if (diff > 0.0) {
        const double dec = -(diff * diff) / (quad > 0.0 ? quad : kTau);
        if (dec <= best_decrease) { best_decrease = dec; j = static_cast<std::ptrdiff_t>(t); }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < tol) {
      converged = true;
      break;
    }

    const double old_i = beta[i];
    const double old_j = beta[j];
    if (s[i] != s[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = beta[i] - beta[j];
      beta[i] += delta;
      beta[j] += delta;
      if (diff > 0.0) {
        if (beta[j] < 0.0) { beta[j] = 0.0; beta[i] = diff; }
      } else {
        if (beta[i] < 0.0) { beta[i] = 0.0; beta[j] = -diff; }
      }
      if (diff > 0.0) {
        if (beta[i] > c) { beta[i] = c; beta[j] = c - diff; }
      } else {
        if (beta[j] > c) { beta[j] = c; beta[i] = c + diff; }
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = beta[i] + beta[j];
      beta[i] -= delta;
      beta[j] += delta;
      if (sum > c) {
        if (beta[i] > c) { beta[i] = c; beta[j] = sum - c; }
      } else {
        if (beta[j] < 0.0) { beta[j] = 0.0; beta[i] = sum; }
      }
      if (sum > c) {
        if (beta[j] > c) { beta[j] = c; beta[i] = sum - c; }
      } else {
        if (beta[i] < 0.0) { beta[i] = 0.0; beta[j] = sum; }
      }
    }

    const double di = beta[i] - old_i;
    const double dj = beta[j] - old_j;
    for (std::size_t t = 0; t < l; ++t) grad[t] += q(i, t) * di + q(j, t) * dj;
    ++iter;
    if (trace) trace->objective.push_back(dual_objective(beta, grad, problem.p));
  }

  // Offset from free variables, or the middle of the feasible interval if none are free.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < l; ++t) {
    const double yg = s[t] * grad[t];
    if (at_upper(t)) {
      if (s[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (s[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  DualSolution out;
  if (n_free > 0) {
    out.rho = free_sum / static_cast<double>(n_free);
  } else if (std::isfinite(ub) && std::isfinite(lb)) {
    out.rho = (ub + lb) / 2.0;
  } else {
    out.rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
  }
  out.objective = dual_objective(beta, grad, problem.p);
  out.beta = std::move(beta);
  if (trace) {
    trace->iterations = iter;
    trace->converged = converged;
  }
  return out;
}

}  // namespace vamci::learn
