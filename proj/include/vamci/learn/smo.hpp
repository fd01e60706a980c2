#pragma once

#include <span>
#include <vector>

#include "vamci/core/matrix.hpp"

namespace vamci::learn {

// Dual objective after every accepted pair update, starting from the zero point.
struct SolverTrace {
  std::vector<double> objective;
  int iterations = 0;
  bool converged = false;
};

struct DualProblem {
  Matrix q;                   // l x l, q(i,j) = s_i s_j K(i,j)
  std::vector<double> p;      // linear term
  std::vector<double> s;      // +1 / -1
  double c = 1.0;             // box upper bound
};

struct DualSolution {
  std::vector<double> beta;
  double rho = 0.0;           // decision value is sum_i beta_i s_i K(i,.) - rho
  double objective = 0.0;
};

// Sequential minimal optimization with second-order working-set selection for
//   min 1/2 b'Qb + p'b  s.t.  s'b = 0,  0 <= b <= C.
// Stops once the maximal KKT violation drops below `tol` or after `max_iter` pair updates.
DualSolution solve_dual(const DualProblem& problem, double tol, int max_iter, SolverTrace* trace);

}  // namespace vamci::learn
