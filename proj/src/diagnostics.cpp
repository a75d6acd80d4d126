#include "lsquad/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include <Eigen/Core>
#include <Eigen/QR>

#include "lsquad/dop.hpp"
#include "lsquad/errors.hpp"
#include "lsquad/moments.hpp"
#include "lsquad/solvers.hpp"

namespace lsquad {

double kappa(std::span<const double> weights) {
  return blocked_abs_sum(weights.data(), weights.size(), exec::seq);
}

double k_omega(const weight_fn& w, const interval& iv, int j) {
  if (j < 1) throw std::invalid_argument("k_omega requires J >= 1");
  w.validate_on(iv);

  using key_t = std::tuple<std::string, double, double, int>;
  static std::map<key_t, double> cache;
  static std::mutex mutex;
  const bool cacheable = w.kind() != weight_kind::custom;
  const key_t key{w.name(), iv.a, iv.b, j};
  if (cacheable) {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  constexpr int panels = 200;
  const gl_rule gl = gauss_legendre(j, interval{0.0, 1.0});
  const double h = iv.length() / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double left = iv.a + p * h;
    double panel = 0.0;
    for (int i = 0; i < j; ++i) {
      const double x = left + h * gl.nodes[static_cast<std::size_t>(i)];
      const double wx = w(x);
      if (!std::isfinite(wx))
        throw evaluation_error("k_omega: weight function non-finite at x = " +
                               std::to_string(x));
      panel += gl.weights[static_cast<std::size_t>(i)] * std::abs(wx);
    }
    total += h * panel;
  }

  if (cacheable) {
    std::lock_guard lock(mutex);
    cache.emplace(key, total);
  }
  return total;
}

stability_report stability(const quad_rule& rule, const weight_fn& w, int j) {
  const double k = kappa(rule.weights);
  const double kw = k_omega(w, rule.nodeset.iv, j);
  return {k, kw, k - kw};
}

double sign_consistency_measure(const quad_rule& rule, const weight_fn& w) {
  const std::size_t n = rule.weights.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = rule.weights[i];
    if (wi == 0.0) continue;  // zero weights are consistent by convention
    sum += std::abs(sign(wi) - sign(w(rule.nodeset.nodes[i])));
  }
  return sum / static_cast<double>(n);
}

quad_rule trapezoid_rule(const node_set& nodeset, const weight_fn& w) {
  const int n = nodeset.size();
  if (n < 2) throw std::invalid_argument("trapezoid_rule requires N >= 2");
  std::vector<double> weights(static_cast<std::size_t>(n));
  const auto& x = nodeset.nodes;
  for (int i = 0; i < n; ++i) {
    const double left = i == 0 ? x[0] : x[static_cast<std::size_t>(i - 1)];
    const double right = i == n - 1 ? x[static_cast<std::size_t>(i)] : x[static_cast<std::size_t>(i + 1)];
    weights[static_cast<std::size_t>(i)] = w(x[static_cast<std::size_t>(i)]) * 0.5 * (right - left);
  }
  return {nodeset, std::move(weights), method::trapezoid, std::nullopt, std::nullopt};
}

double integration_error(const quad_rule& rule, const test_fn& f, double reference) {
  return std::abs(apply_rule(rule, f) - reference);
}

namespace {

// One scan step: rule for the given equidistant N (midpoint node at N = 1)
// and the criterion verdict. kappa_out reports the observed kappa even when
// the step fails.
bool criterion_holds(int n, int d, const weight_fn& w, const interval& iv, method meth,
                     const stability_criterion& crit, double k_w, exec ex,
                     double& kappa_out) {
  const node_set nodes = n == 1 ? node_set(iv, {iv.midpoint()}) : make_equidistant(iv, n);
  const dop_basis basis = build_dop_basis(nodes, d, ex);
  const moment_vector m = compute_moments(basis, w, crit.j, ex);
  quad_rule rule = meth == method::ls ? ls_weights(basis, m, ex) : nnls_weights(basis, m, w);
  kappa_out = kappa(rule.weights);
  bool ok = kappa_out <= crit.kappa_factor * k_w;
  if (meth == method::nnls)
    ok = ok && rule.exactness_residual.value() <= crit.exactness_tol;
  return ok;
}

}  // namespace

int minimal_stable_n(int d, const weight_fn& w, const interval& iv, method meth,
                     const stability_criterion& crit, exec ex) {
  if (d < 0) throw std::invalid_argument("minimal_stable_n requires d >= 0");
  if (meth == method::trapezoid)
    throw std::invalid_argument("minimal_stable_n: method must be ls or nnls");

  const double k_w = k_omega(w, iv, crit.k_omega_order);
  std::vector<double> profile;
  for (int n = std::max(d + 1, 1); n <= crit.cap; ++n) {
    double kap = 0.0;
    bool ok = false;
    try {
      ok = criterion_holds(n, d, w, iv, meth, crit, k_w, ex, kap);
    } catch (const convergence_error&) {
      ok = false;  // a stalled NNLS solve is a criterion miss, not a failure
    }
    profile.push_back(kap);

    if (ok && crit.confirm_window > 0) {
      for (int m2 = n + 1; m2 <= n + crit.confirm_window && ok; ++m2) {
        double kap2 = 0.0;
        try {
          ok = criterion_holds(m2, d, w, iv, meth, crit, k_w, ex, kap2);
        } catch (const convergence_error&) {
          ok = false;
        }
      }
    }
    if (ok) return n;
  }
  throw search_error("minimal_stable_n: no N <= " + std::to_string(crit.cap) +
                         " satisfies the criterion for d = " + std::to_string(d),
                     std::move(profile));
}

power_law_fit fit_power_law(const std::vector<std::pair<int, int>>& samples) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [d, n] : samples)
    if (d >= 1 && n >= 1) usable.emplace_back(static_cast<double>(d), static_cast<double>(n));
  std::size_t distinct = 0;
  {
    std::vector<double> ds;
    for (const auto& [d, n] : usable) ds.push_back(d);
    std::sort(ds.begin(), ds.end());
    distinct = static_cast<std::size_t>(std::unique(ds.begin(), ds.end()) - ds.begin());
  }
  if (distinct < 2)
    throw std::invalid_argument("fit_power_law: need at least 2 samples with distinct d >= 1");

  // Stage 1: ordinary least squares on log N = log C + s log d.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [d, n] : usable) {
    const double lx = std::log(d), ly = std::log(n);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(usable.size());
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double ss_log = 0.0;
  for (const auto& [d, n] : usable) {
    const double r = std::log(n) - (intercept + slope * std::log(d));
    ss_log += r * r;
  }

  power_law_fit fit;
  fit.loglog_c = std::exp(intercept);
  fit.loglog_s = slope;
  fit.loglog_residual = std::sqrt(ss_log / m);
  for (const auto& [d, n] : samples) fit.samples.emplace_back(d, n);

  // Stage 2: damped Gauss-Newton on the N-space residuals r_i = N_i - C d_i^s.
  double c = fit.loglog_c, s = fit.loglog_s;
  const auto sse = [&usable](double c_, double s_) {
    double acc = 0.0;
    for (const auto& [d, n] : usable) {
      const double r = n - c_ * std::pow(d, s_);
      acc += r * r;
    }
    return acc;
  };
  double current = sse(c, s);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(usable.size()), 2);
    Eigen::VectorXd r(static_cast<Eigen::Index>(usable.size()));
    for (std::size_t i = 0; i < usable.size(); ++i) {
      const auto& [d, n] = usable[i];
      const double model = c * std::pow(d, s);
      r(static_cast<Eigen::Index>(i)) = n - model;
      jac(static_cast<Eigen::Index>(i), 0) = std::pow(d, s);
      jac(static_cast<Eigen::Index>(i), 1) = model * std::log(d);
    }
    const Eigen::Vector2d step = jac.colPivHouseholderQr().solve(r);
    double lambda = 1.0;
    bool improved = false;
    while (lambda > 1e-6) {
      const double c2 = c + lambda * step(0), s2 = s + lambda * step(1);
      if (c2 > 0.0) {
        const double next = sse(c2, s2);
        if (next < current) {
          c = c2;
          s = s2;
          current = next;
          improved = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!improved || step.norm() <= 1e-12 * (std::abs(c) + std::abs(s))) break;
  }

  fit.c = c;
  fit.s = s;
  return fit;
}

}  // namespace lsquad
