#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lsquad/errors.hpp"
#include "lsquad/moments.hpp"

namespace lsquad {

namespace {

// P_J and P_{J-1} at t by the three-term recurrence.
void legendre_pair(int j, double t, double& pj, double& pjm1) {
  double p0 = 1.0, p1 = t;
  if (j == 1) {
    pj = p1;
    pjm1 = p0;
    return;
  }
  for (int i = 1; i < j; ++i) {
    const double p2 = ((2.0 * i + 1.0) * t * p1 - i * p0) / (i + 1.0);
    p0 = p1;
    p1 = p2;
  }
  pj = p1;
  pjm1 = p0;
}

}  // namespace

gl_rule gauss_legendre(int j, const interval& iv) {
  if (j < 1) throw std::invalid_argument("gauss_legendre requires J >= 1");

  // Roots on [-1, 1], descending while iterating (i = 1 gives the largest).
  std::vector<double> root(static_cast<std::size_t>(j));
  for (int i = 1; i <= j; ++i) {
    double t = std::cos(std::numbers::pi * (i - 0.25) / (j + 0.5));
    double pj = 0.0, pjm1 = 0.0, dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_pair(j, t, pj, pjm1);
      dp = j * (t * pj - pjm1) / (t * t - 1.0);
      const double step = pj / dp;
      t -= step;
      if (std::abs(step) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw convergence_error("gauss_legendre: Newton iteration did not converge");
    root[static_cast<std::size_t>(i - 1)] = t;
  }

  // Symmetrize the +/- pairs so both halves come from the same bits, then
  // recompute the derivative at the symmetrized points for the weights.
  for (int i = 0; i < j / 2; ++i) {
    const double r = 0.5 * (root[static_cast<std::size_t>(i)] -
                            root[static_cast<std::size_t>(j - 1 - i)]);
    root[static_cast<std::size_t>(i)] = r;
    root[static_cast<std::size_t>(j - 1 - i)] = -r;
  }
  if (j % 2 == 1) root[static_cast<std::size_t>(j / 2)] = 0.0;

  gl_rule rule{j, iv, std::vector<double>(static_cast<std::size_t>(j)),
               std::vector<double>(static_cast<std::size_t>(j))};
  const double half = 0.5 * iv.length();
  const double mid = iv.midpoint();
  for (int i = 0; i < j; ++i) {
    const double t = root[static_cast<std::size_t>(i)];
    double pj = 0.0, pjm1 = 0.0;
    legendre_pair(j, t, pj, pjm1);
    const double dp = j * (t * pj - pjm1) / (t * t - 1.0);
    // Ascending node order: root[0] is the largest on [-1, 1].
    rule.nodes[static_cast<std::size_t>(j - 1 - i)] = mid + half * t;
    rule.weights[static_cast<std::size_t>(j - 1 - i)] =
        half * 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return rule;
}

}  // namespace lsquad
