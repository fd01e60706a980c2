#pragma once

#include <span>
#include <vector>

#include "vamci/core/matrix.hpp"
#include "vamci/learn/smo.hpp"

namespace vamci::learn {

// f(z) = w.z + b, in whatever feature space the model was fitted in.
struct LinearModel {
  std::vector<double> w;
  double b = 0.0;

  double decision(std::span<const double> row) const;
  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

// Soft-margin linear SVM, labels y in {+1, -1}:
//   min 1/2|w|^2 + C sum max(0, 1 - y_i f(z_i))
LinearModel fit_linear_svm(const Matrix& z, std::span<const double> y, double c, double tol,
                           int max_iter, SolverTrace* trace = nullptr);

// Linear epsilon-insensitive SVR:
//   min 1/2|w|^2 + C sum max(0, |y_i - f(z_i)| - eps)
LinearModel fit_svr(const Matrix& z, std::span<const double> y, double c, double epsilon, double tol,
                    int max_iter, SolverTrace* trace = nullptr);

// Ridge with an unpenalized intercept: minimizes |yc - Zc w|^2 + lambda |w|^2 on centered
// columns. lambda = 0 gives the minimum-norm least-squares solution.
LinearModel fit_ridge(const Matrix& z, std::span<const double> y, double lambda);

double svm_primal_objective(const Matrix& z, std::span<const double> y, const LinearModel& m, double c);
double svr_primal_objective(const Matrix& z, std::span<const double> y, const LinearModel& m, double c,
                            double epsilon);

}  // namespace vamci::learn
