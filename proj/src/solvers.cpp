#include "lsquad/solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsquad/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lsquad {

namespace {

void check_shapes(const dop_basis& basis, const moment_vector& m) {
  if (m.d != basis.degree() || static_cast<int>(m.values.size()) != basis.degree() + 1)
    throw std::invalid_argument("basis and moment vector disagree on d");
}

}  // namespace

quad_rule ls_weights(const dop_basis& basis, const moment_vector& m, exec ex) {
  check_shapes(basis, m);
  const int n = basis.n();
  const int rows = basis.degree() + 1;
  const row_major_matrix& a = basis.nodal_values();

  std::vector<double> w(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == exec::par)
#endif
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < rows; ++k) s += a(k, i) * m.values[static_cast<std::size_t>(k)];
    w[static_cast<std::size_t>(i)] = s;
  }
  (void)ex;

  quad_rule rule{basis.nodeset(), std::move(w), method::ls, basis.degree(), std::nullopt};
  rule.exactness_residual = exactness_residual(basis, m, rule.weights);
  return rule;
}

quad_rule nnls_weights(const dop_basis& basis, const moment_vector& m, const weight_fn& w,
                       double tol) {
  check_shapes(basis, m);
  const int n = basis.n();
  const int rows = basis.degree() + 1;

  // B = A S, column n scaled by s_n = sign(omega(x_n)).
  std::vector<double> s(static_cast<std::size_t>(n));
  Eigen::MatrixXd b(rows, n);
  for (int i = 0; i < n; ++i) {
    s[static_cast<std::size_t>(i)] = sign(w(basis.nodeset().nodes[static_cast<std::size_t>(i)]));
    for (int k = 0; k < rows; ++k)
      b(k, i) = basis.nodal_values()(k, i) * s[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd c(rows);
  for (int k = 0; k < rows; ++k) c(k) = m.values[static_cast<std::size_t>(k)];

  const nnls_solution sol = lawson_hanson(b, c, tol);
  if (!sol.converged)
    throw convergence_error("nnls_weights: Lawson-Hanson hit its iteration budget (" +
                            std::to_string(sol.iterations) + " iterations, residual " +
                            std::to_string(sol.residual_norm) + ")");

  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    weights[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] * sol.x(i);

  // Sign-consistency by construction (u >= 0); verified before returning.
  for (int i = 0; i < n; ++i) {
    const double wi = weights[static_cast<std::size_t>(i)];
    if (wi != 0.0 && sign(wi) != s[static_cast<std::size_t>(i)])
      throw numerical_error("nnls_weights: sign-consistency check failed");
  }

  quad_rule rule{basis.nodeset(), std::move(weights), method::nnls, basis.degree(),
                 std::nullopt};
  rule.exactness_residual = exactness_residual(basis, m, rule.weights);
  return rule;
}

double exactness_residual(const dop_basis& basis, const moment_vector& m,
                          std::span<const double> weights) {
  check_shapes(basis, m);
  if (static_cast<int>(weights.size()) != basis.n())
    throw std::invalid_argument("exactness_residual: weight count != N");
  const int rows = basis.degree() + 1;
  double ss = 0.0;
  for (int k = 0; k < rows; ++k) {
    const double r = blocked_dot(basis.nodal_values().row(k).data(), weights.data(),
                                 weights.size(), exec::seq) -
                     m.values[static_cast<std::size_t>(k)];
    ss += r * r;
  }
  return std::sqrt(ss);
}

}  // namespace lsquad
