#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lsquad/core.hpp"
#include "lsquad/exec.hpp"

namespace lsquad {

// Stability measure kappa = sum |w_n|: the operator norm of the rule on
// bounded integrands, so the amplification factor for input perturbations.
double kappa(std::span<const double> weights);

// Stability factor K_omega = integral of |omega|: the continuous analogue of
// kappa and its ideal limit. |omega| has kinks at sign changes, so a single
// global rule converges poorly; this uses composite Gauss-Legendre over 200
// equal panels with J points each. J = 200 is accurate to ~1e-6 for the
// oscillatory catalog weight; J = 3000 reaches 1e-8 for every catalog weight
// and is what the stability scans use. Catalog results are cached per
// (weight, interval, J).
double k_omega(const weight_fn& w, const interval& iv, int j = 200);

// kappa, K_omega and their difference for one rule.
struct stability_report {
  double kappa;
  double k_omega;
  double difference;
};

stability_report stability(const quad_rule& rule, const weight_fn& w, int j = 3000);

// S_omega = (1/N) sum_n |sign(w_n) - sign(omega(x_n))|, with zero quadrature
// weights counted consistent: a zero weight contributes nothing to the rule,
// and the sparse NNLS solution would otherwise be scored inconsistent at
// every node it zeroes out.
double sign_consistency_measure(const quad_rule& rule, const weight_fn& w);

// Generalized composite trapezoidal rule for the weighted integral, realized
// as the weight vector w_n = omega(x_n) (x_{n+1} - x_{n-1}) / 2 with
// one-sided half-intervals at the ends, so kappa and S_omega apply to it
// uniformly. Identical to summing trapezoids of f*omega over the panels.
quad_rule trapezoid_rule(const node_set& nodeset, const weight_fn& w);

// |Q_N[f] - reference|.
double integration_error(const quad_rule& rule, const test_fn& f, double reference);

// Stopping criterion and scan controls for minimal_stable_n.
struct stability_criterion {
  double kappa_factor = 2.0;      // require kappa <= kappa_factor * K_omega
  double exactness_tol = 1e-13;   // NNLS additionally requires this residual
  int cap = 5000;                 // scan bound; exceeding it raises search_error
  int confirm_window = 0;         // if > 0, also require the next W values of N to pass
  int j = 200;                    // moment order
  int k_omega_order = 3000;       // per-panel order for the K_omega threshold
};

// Smallest N, scanned linearly from N = d+1 upward, at which the criterion
// first holds on equidistant nodes (N = 1 means the single midpoint node).
// LS: kappa <= factor * K_omega; NNLS: additionally the exactness residual.
// Exceeding the cap raises search_error carrying the kappa profile.
int minimal_stable_n(int d, const weight_fn& w, const interval& iv, method meth,
                     const stability_criterion& crit = {}, exec ex = exec::par);

// Power-law fit N ~= C * d^s over (d, minimal_N) samples. Samples with d = 0
// are excluded (log undefined). Two stages: ordinary least squares on
// log N = log C + s log d initializes, then damped Gauss-Newton minimizes the
// N-space residual sum( (N - C d^s)^2 ), which weights the large-d tail the
// way the reference tables do; the saturated small-d samples (minimal N stuck
// at d+1) otherwise drag the log-log slope far below the tabulated values.
// The refined (C, s) is primary; the log-log stage is retained in the
// loglog_* fields.
struct power_law_fit {
  double c;
  double s;
  double loglog_c;
  double loglog_s;
  double loglog_residual;  // RMS residual of the log-log regression
  std::vector<std::pair<int, int>> samples;
};

power_law_fit fit_power_law(const std::vector<std::pair<int, int>>& samples);

}  // namespace lsquad
