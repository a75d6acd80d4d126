#include "lsquad/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/QR>

namespace lsquad {

nnls_solution lawson_hanson(const Eigen::MatrixXd& b, const Eigen::VectorXd& c, double tol) {
  const Eigen::Index m = b.rows();
  const Eigen::Index n = b.cols();
  if (c.size() != m) throw std::invalid_argument("lawson_hanson: dimension mismatch");
  if (!b.allFinite() || !c.allFinite())
    throw std::invalid_argument("lawson_hanson: non-finite entries");

  if (tol <= 0.0) {
    const double norm1 = n > 0 ? b.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
    tol = 10.0 * std::numeric_limits<double>::epsilon() * norm1 *
          static_cast<double>(std::max(m, n));
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  Eigen::Index n_passive = 0;

  const int max_iterations = 3 * static_cast<int>(n);
  int iterations = 0;
  bool converged = false;

  Eigen::VectorXd best_x = x;
  double best_residual = (b * x - c).norm();

  // Scratch for the passive-column subproblem.
  std::vector<Eigen::Index> passive_idx;
  Eigen::MatrixXd bp;
  Eigen::VectorXd z;

  while (true) {
    const Eigen::VectorXd w = b.transpose() * (c - b * x);

    // Most positive gradient over the active (zero) set; strict comparison
    // keeps ties at the lowest index.
    Eigen::Index t = -1;
    double wmax = tol;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!passive[static_cast<std::size_t>(i)] && w(i) > wmax) {
        wmax = w(i);
        t = i;
      }
    if (t < 0) {
      converged = true;
      break;
    }
    passive[static_cast<std::size_t>(t)] = true;
    ++n_passive;

    // Inner loop: solve on the passive set, clip negative coordinates back to
    // the boundary until the subproblem solution is feasible.
    bool out_of_budget = false;
    while (true) {
      if (iterations >= max_iterations) {
        out_of_budget = true;
        break;
      }
      ++iterations;

      passive_idx.clear();
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[static_cast<std::size_t>(i)]) passive_idx.push_back(i);
      bp.resize(m, static_cast<Eigen::Index>(passive_idx.size()));
      for (std::size_t i = 0; i < passive_idx.size(); ++i)
        bp.col(static_cast<Eigen::Index>(i)) = b.col(passive_idx[i]);
      z = bp.colPivHouseholderQr().solve(c);

      double zmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < z.size(); ++i) zmin = std::min(zmin, z(i));
      if (zmin > 0.0) {
        x.setZero();
        for (std::size_t i = 0; i < passive_idx.size(); ++i)
          x(passive_idx[i]) = z(static_cast<Eigen::Index>(i));
        break;
      }

      // Step length to the first coordinate hitting zero, over z_p <= 0.
      double alpha = std::numeric_limits<double>::infinity();
      Eigen::Index blocker = -1;
      for (std::size_t i = 0; i < passive_idx.size(); ++i) {
        const double zi = z(static_cast<Eigen::Index>(i));
        if (zi <= 0.0) {
          const double xi = x(passive_idx[i]);
          const double a = xi / (xi - zi);
          if (a < alpha) {
            alpha = a;
            blocker = passive_idx[i];
          }
        }
      }
      for (std::size_t i = 0; i < passive_idx.size(); ++i) {
        const Eigen::Index idx = passive_idx[i];
        x(idx) += alpha * (z(static_cast<Eigen::Index>(i)) - x(idx));
      }
      // The blocking coordinate is zero by construction of alpha; pin it (and
      // anything rounding pushed past the boundary) and return it to the
      // active set.
      for (std::size_t i = 0; i < passive_idx.size(); ++i) {
        const Eigen::Index idx = passive_idx[i];
        if (idx == blocker || x(idx) <= 0.0) {
          x(idx) = 0.0;
          if (passive[static_cast<std::size_t>(idx)]) {
            passive[static_cast<std::size_t>(idx)] = false;
            --n_passive;
          }
        }
      }
    }

    const double residual = (b * x - c).norm();
    if (residual < best_residual) {
      best_residual = residual;
      best_x = x;
    }
    if (out_of_budget) break;
  }

  nnls_solution sol;
  if (converged) {
    sol.x = x;
    sol.residual_norm = (b * x - c).norm();
  } else {
    sol.x = best_x;
    sol.residual_norm = best_residual;
  }
  sol.iterations = iterations;
  sol.converged = converged;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sol.x(i) > 0.0) sol.passive_set.push_back(static_cast<int>(i));
  return sol;
}

}  // namespace lsquad
