#include "lsquad/moments.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "lsquad/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lsquad {

moment_vector compute_moments(const dop_basis& basis, const weight_fn& w, int j, exec ex) {
  if (j < 1) throw std::invalid_argument("compute_moments requires J >= 1");
  const interval& iv = basis.nodeset().iv;
  w.validate_on(iv);
  const gl_rule gl = gauss_legendre(j, iv);

  // g_j = w_j^GL * omega(x_j^GL), checked finite once for all moments.
  std::vector<double> g(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) {
    const double wx = w(gl.nodes[static_cast<std::size_t>(i)]);
    if (!std::isfinite(wx))
      throw evaluation_error("compute_moments: weight function non-finite at x = " +
                             std::to_string(gl.nodes[static_cast<std::size_t>(i)]));
    g[static_cast<std::size_t>(i)] = gl.weights[static_cast<std::size_t>(i)] * wx;
  }

  // Basis values at the GL points through the stored coefficients.
  const int rows = basis.degree() + 1;
  row_major_matrix phi(rows, j);
  {
    std::vector<double> ref(static_cast<std::size_t>(rows));
    for (int i = 0; i < j; ++i) {
      const double t = 2.0 * (gl.nodes[static_cast<std::size_t>(i)] - iv.a) / iv.length() - 1.0;
      legendre_values(basis.degree(), t, ref.data());
      for (int k = 0; k < rows; ++k) {
        double v = 0.0;
        for (int l = 0; l <= k; ++l) v += basis.coeffs()(k, l) * ref[static_cast<std::size_t>(l)];
        phi(k, i) = v;
      }
    }
  }

  moment_vector m{basis.degree(), std::vector<double>(static_cast<std::size_t>(rows)), j};
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == exec::par)
#endif
  for (int k = 0; k < rows; ++k)
    m.values[static_cast<std::size_t>(k)] =
        blocked_dot(phi.row(k).data(), g.data(), static_cast<std::size_t>(j), exec::seq);
  (void)ex;
  return m;
}

}  // namespace lsquad
