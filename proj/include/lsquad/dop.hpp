#pragma once

#include <span>

#include <Eigen/Core>

#include "lsquad/core.hpp"
#include "lsquad/exec.hpp"

namespace lsquad {

// Matrices whose rows are iterated as contiguous vectors (basis index k along
// rows, node index n along columns).
using row_major_matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Discrete inner product associated with a vector of nodal values:
// <u, v> = sum_n u_n v_n.
double nodal_inner_product(std::span<const double> u, std::span<const double> v);

// Discrete orthonormal polynomial basis phi_0..phi_d with respect to the
// nodal inner product. Stored as nodal values phi_k(x_n) plus the coefficient
// rows of each phi_k in the reference basis (Legendre polynomials affinely
// transformed to [a, b]), which allow evaluation away from the nodes.
class dop_basis {
 public:
  dop_basis(node_set nodeset, int degree, row_major_matrix nodal, row_major_matrix coeffs);

  int degree() const { return degree_; }
  const node_set& nodeset() const { return nodeset_; }
  int n() const { return nodeset_.size(); }

  // (d+1) x N, entry (k, n) = phi_k(x_n).
  const row_major_matrix& nodal_values() const { return nodal_; }

  // (d+1) x (d+1), lower triangular with positive diagonal; row k holds the
  // reference-basis coefficients of phi_k.
  const row_major_matrix& coeffs() const { return coeffs_; }

 private:
  int degree_;
  node_set nodeset_;
  row_major_matrix nodal_;
  row_major_matrix coeffs_;
};

// Modified Gram-Schmidt on the transformed Legendre basis, with one
// re-orthogonalization pass per vector ("twice is enough") so scattered node
// sets with ill-conditioned Vandermonde matrices still come out orthonormal
// to near machine precision. Requires N > d; a pre-normalization residual
// norm below 1e-13 raises degeneracy_error.
dop_basis build_dop_basis(const node_set& nodeset, int degree, exec ex = exec::par);

// phi_k at arbitrary points via the stored coefficient row.
Eigen::VectorXd eval_dop(const dop_basis& basis, int k, std::span<const double> points);

// P_0..P_degree at t in [-1, 1] by the three-term recurrence; out must hold
// degree+1 values.
void legendre_values(int degree, double t, double* out);

// Closed-form discrete Chebyshev polynomial (Hahn, alpha = beta = 0) on the
// N-point equidistant lattice over the interval, normalized by 1/sqrt(h_k):
// an independent oracle for build_dop_basis on equidistant nodes. The lattice
// coordinate is t = (N-1)(x-a)/(b-a), matching ascending node order, and the
// hypergeometric sum is evaluated term by term via Pochhammer ratios.
double discrete_chebyshev_eval(int n, int k, const interval& iv, double x);

// Squared norm h_k = (N+k)! (N-k-1)! / ((2k+1) (N-1)!^2) of the k-th Hahn
// polynomial, computed in log-gamma arithmetic (the factorial ratio overflows
// double precision near N ~ 170).
double h_k(int n, int k);

// N(d) = ceil(((2d-1)^2 + 1) / 2): the node count from which the equidistant
// stability bound applies.
long n_of_d(int d);

// k(N) = (1 + sqrt(2N-1)) / 2: the index bound below which the sup-norm bound
// |phi_k| <= 1/sqrt(h_k) holds.
double k_of_n(long n);

}  // namespace lsquad
