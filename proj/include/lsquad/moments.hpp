#pragma once

#include <vector>

#include "lsquad/core.hpp"
#include "lsquad/dop.hpp"
#include "lsquad/exec.hpp"

namespace lsquad {

// J-point Gauss-Legendre rule mapped to [a, b]: exact for polynomials of
// degree <= 2J-1, positive weights summing to b-a, nodes symmetric about the
// midpoint (the +/- root pairs are symmetrized explicitly so the layout is
// bit-stable).
struct gl_rule {
  int j;
  interval iv;
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Legendre roots by Newton iteration from the Chebyshev initial guesses,
// converged to 1e-15 (at most 100 steps, then convergence_error); weights by
// 2 / ((1 - x^2) P_J'(x)^2).
gl_rule gauss_legendre(int j, const interval& iv);

// Moment vector m_k = I[phi_k], k = 0..d.
struct moment_vector {
  int d;
  std::vector<double> values;
  int j_used;
};

// Discrete Gauss-Legendre functional L_J applied to each basis polynomial:
// m_k ~= sum_j w_j^GL phi_k(x_j^GL) omega(x_j^GL). The basis is evaluated at
// the GL points through its stored coefficients (one Gram-Schmidt per node
// set). J = 200 is the working default; spectral convergence makes the result
// J-independent to ~1e-14 for smooth omega. Non-finite omega values raise
// evaluation_error.
moment_vector compute_moments(const dop_basis& basis, const weight_fn& w, int j = 200,
                              exec ex = exec::par);

}  // namespace lsquad
