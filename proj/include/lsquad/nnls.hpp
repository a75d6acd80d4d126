#pragma once

#include <vector>

#include <Eigen/Core>

namespace lsquad {

// Result of one nonnegative least-squares solve. Entries outside the passive
// set are exactly zero; residual_norm is ||Bx - c||_2 at the returned x.
// converged is false only when the iteration cap was hit, in which case x is
// the best iterate seen.
struct nnls_solution {
  Eigen::VectorXd x;
  std::vector<int> passive_set;
  double residual_norm;
  int iterations;
  bool converged;
};

// Lawson-Hanson active-set algorithm for min ||Bx - c||_2 subject to x >= 0.
//
// Conventions that make the solve reproducible and hand-traceable:
//  - the gradient-selection step breaks ties toward the lowest index;
//  - passive-set subproblems are solved by a column-pivoted QR factorization
//    (never the normal equations, which square the condition number);
//  - tol <= 0 selects the default 10 * eps * ||B||_1 * max(M, N);
//  - the iteration budget is 3N inner solves; exhausting it returns the best
//    iterate with converged = false rather than throwing, so scans can treat
//    a stalled solve as a criterion miss.
//
// At a converged exit the KKT conditions hold: x >= 0, the gradient
// w = B^T (c - Bx) satisfies w_n <= tol off the passive set and |w_n| <= tol
// on it.
nnls_solution lawson_hanson(const Eigen::MatrixXd& b, const Eigen::VectorXd& c,
                            double tol = 0.0);

}  // namespace lsquad
