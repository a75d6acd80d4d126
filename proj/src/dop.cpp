#include "lsquad/dop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "lsquad/errors.hpp"

namespace lsquad {

double nodal_inner_product(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("nodal_inner_product: length mismatch");
  return blocked_dot(u.data(), v.data(), u.size(), exec::seq);
}

dop_basis::dop_basis(node_set nodeset, int degree, row_major_matrix nodal,
                     row_major_matrix coeffs)
    : degree_(degree),
      nodeset_(std::move(nodeset)),
      nodal_(std::move(nodal)),
      coeffs_(std::move(coeffs)) {}

void legendre_values(int degree, double t, double* out) {
  out[0] = 1.0;
  if (degree == 0) return;
  out[1] = t;
  for (int j = 1; j < degree; ++j)
    out[j + 1] = ((2.0 * j + 1.0) * t * out[j] - j * out[j - 1]) / (j + 1.0);
}

dop_basis build_dop_basis(const node_set& nodeset, int degree, exec ex) {
  if (degree < 0) throw std::invalid_argument("build_dop_basis requires d >= 0");
  const int n = nodeset.size();
  if (n <= degree)
    throw std::invalid_argument("build_dop_basis requires N > d (got N = " +
                                std::to_string(n) + ", d = " + std::to_string(degree) + ")");

  const int rows = degree + 1;
  row_major_matrix q(rows, n);
  {
    // Reference basis values column by column: Legendre on [-1, 1] pulled
    // back through the affine map of [a, b].
    std::vector<double> col(static_cast<std::size_t>(rows));
    const interval& iv = nodeset.iv;
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * (nodeset.nodes[static_cast<std::size_t>(j)] - iv.a) / iv.length() - 1.0;
      legendre_values(degree, t, col.data());
      for (int k = 0; k < rows; ++k) q(k, j) = col[static_cast<std::size_t>(k)];
    }
  }

  row_major_matrix c = row_major_matrix::Identity(rows, rows);
  const std::size_t len = static_cast<std::size_t>(n);
  for (int k = 0; k < rows; ++k) {
    double* qk = q.row(k).data();
    double* ck = c.row(k).data();
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        const double* qj = q.row(j).data();
        const double r = blocked_dot(qj, qk, len, ex);
        axpy(-r, qj, qk, len, ex);
        axpy(-r, c.row(j).data(), ck, static_cast<std::size_t>(rows), exec::seq);
      }
    }
    const double norm = std::sqrt(blocked_dot(qk, qk, len, ex));
    if (norm < 1e-13)
      throw degeneracy_error("build_dop_basis: rank-deficient at degree " + std::to_string(k) +
                             " (residual norm " + std::to_string(norm) + ")");
    scale(1.0 / norm, qk, len, ex);
    scale(1.0 / norm, ck, static_cast<std::size_t>(rows), exec::seq);
    // Row operations never touch the diagonal entry, which stays positive; the
    // flip is defensive and documents the sign convention.
    if (c(k, k) < 0.0) {
      scale(-1.0, qk, len, exec::seq);
      scale(-1.0, ck, static_cast<std::size_t>(rows), exec::seq);
    }
  }

  return {nodeset, degree, std::move(q), std::move(c)};
}

Eigen::VectorXd eval_dop(const dop_basis& basis, int k, std::span<const double> points) {
  if (k < 0 || k > basis.degree())
    throw std::invalid_argument("eval_dop: k out of range");
  const int rows = basis.degree() + 1;
  const interval& iv = basis.nodeset().iv;
  std::vector<double> ref(static_cast<std::size_t>(rows));
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = 2.0 * (points[i] - iv.a) / iv.length() - 1.0;
    legendre_values(basis.degree(), t, ref.data());
    double v = 0.0;
    for (int j = 0; j <= k; ++j) v += basis.coeffs()(k, j) * ref[static_cast<std::size_t>(j)];
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

double h_k(int n, int k) {
  if (n < 1 || k < 0 || k >= n) throw std::invalid_argument("h_k requires 0 <= k <= N-1");
  return std::exp(std::lgamma(n + k + 1.0) + std::lgamma(n - k + 0.0) -
                  std::log(2.0 * k + 1.0) - 2.0 * std::lgamma(n + 0.0));
}

double discrete_chebyshev_eval(int n, int k, const interval& iv, double x) {
  if (n < 1 || k < 0 || k >= n)
    throw std::invalid_argument("discrete_chebyshev_eval requires 0 <= k <= N-1");
  const double t = (n - 1.0) * (x - iv.a) / iv.length();
  // Q_k(t) = sum_j (-k)_j (k+1)_j (-t)_j / ((1)_j (-N+1)_j j!), j = 0..k.
  double sum = 1.0;
  double term = 1.0;
  for (int j = 0; j < k; ++j) {
    term *= (j - k) * (k + 1.0 + j) * (j - t) /
            ((1.0 + j) * (j + 1.0 - n) * (1.0 + j));
    sum += term;
  }
  return sum / std::sqrt(h_k(n, k));
}

long n_of_d(int d) {
  if (d < 0) throw std::invalid_argument("n_of_d requires d >= 0");
  const long m = 2L * d - 1;  // (2d-1)^2 + 1 is even, so the ceiling is exact
  return (m * m + 1) / 2;
}

double k_of_n(long n) {
  if (n < 1) throw std::invalid_argument("k_of_n requires N >= 1");
  return 0.5 * (1.0 + std::sqrt(2.0 * n - 1.0));
}

}  // namespace lsquad
