#pragma once

#include <functional>

#include "lsquad/core.hpp"

namespace lsquad {

// Adaptive Gauss-Kronrod integration of f over [a, b], refined to the given
// relative tolerance. This is the independent reference side of dual-route
// checks (moments, K_omega, accuracy experiments); the production paths use
// the fixed-order rules defined elsewhere.
double adaptive_integral(const std::function<double(double)>& f, const interval& iv,
                         double tol = 1e-13);

// I[f] = integral of f * omega, computed adaptively once and cached per
// (f, omega, interval) for catalog functions; used as the reference value in
// accuracy error columns.
double reference_integral(const test_fn& f, const weight_fn& w, const interval& iv);

}  // namespace lsquad
