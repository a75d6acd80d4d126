#pragma once

#include <span>

#include "lsquad/core.hpp"
#include "lsquad/dop.hpp"
#include "lsquad/exec.hpp"
#include "lsquad/moments.hpp"
#include "lsquad/nnls.hpp"

namespace lsquad {

// Residual threshold at which a rule's approximate degree of exactness is
// treated as achieved exactly (one decade above 1e-14 to absorb platform
// rounding).
inline constexpr double exactness_tolerance = 1e-13;

// Least-squares quadrature weights w_n = sum_k phi_k(x_n) m_k. Because the
// rows of A = (phi_k(x_n)) are orthonormal, this is the minimal-Euclidean-norm
// solution of the underdetermined exactness system A w = m; the residual is
// recorded on the rule.
quad_rule ls_weights(const dop_basis& basis, const moment_vector& m, exec ex = exec::par);

// Sign-consistent weights via the sign-matrix reduction: with
// S = diag(sign(omega(x_n))) (sign(0) = +1), solve
// min ||A S u - m||_2 s.t. u >= 0 by Lawson-Hanson and return w = S u. The
// result is sign-consistent by construction, which is verified before the
// rule is returned. A solver that hits its iteration budget raises
// convergence_error here.
quad_rule nnls_weights(const dop_basis& basis, const moment_vector& m, const weight_fn& w,
                       double tol = 0.0);

// ||A w - m||_2 for an arbitrary weight vector.
double exactness_residual(const dop_basis& basis, const moment_vector& m,
                          std::span<const double> weights);

}  // namespace lsquad
