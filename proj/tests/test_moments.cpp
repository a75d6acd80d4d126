#include <cmath>
#include <vector>

#include <doctest.h>

#include "lsquad/core.hpp"
#include "lsquad/dop.hpp"
#include "lsquad/errors.hpp"
#include "lsquad/moments.hpp"
#include "lsquad/reference.hpp"

using namespace lsquad;

namespace {
bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("the zeroth moment of the unit weight is the interval length times phi_0") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 4), 0);
  const moment_vector m = compute_moments(basis, weight_fn::catalog(weight_kind::one));
  REQUIRE(m.d == 0);
  REQUIRE(m.values.size() == 1);
  CHECK(m.j_used == 200);
  // phi_0 = 1/2, integral over [-1, 1] is 2 * 1/2 = 1.
  CHECK(near(m.values[0], 1.0, 1e-14));
}

TEST_CASE("the oscillatory weight integrates to zero in every low moment") {
  // cos(20 pi x) has ten full periods on [-1, 1]; its product with any
  // low-degree polynomial integrates to (analytically computable) tiny values,
  // and the constant moment is exactly zero.
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 12), 0);
  const moment_vector m =
      compute_moments(basis, weight_fn::catalog(weight_kind::cos_20pi_x));
  CHECK(near(m.values[0], 0.0, 1e-14));
}

TEST_CASE("smooth weights give J-independent moments") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 30), 8);
  const auto w = weight_fn::catalog(weight_kind::one_minus_x2);
  const moment_vector m200 = compute_moments(basis, w, 200);
  const moment_vector m400 = compute_moments(basis, w, 400);
  for (int k = 0; k <= 8; ++k) CHECK(near(m200.values[k], m400.values[k], 1e-12));
}

TEST_CASE("moments of a branch-point weight match adaptive integration to its rate") {
  // sqrt radicands have algebraic branch points where fixed-order
  // Gauss-Legendre converges like J^-3; at J = 200 that floor sits near 2e-8.
  // The pinned tolerance records the measured accuracy rather than the
  // spectral rate smooth weights enjoy.
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 25), 6);
  const auto w = weight_fn::catalog(weight_kind::x_sqrt_one_minus_x3);
  const moment_vector m = compute_moments(basis, w, 200);
  for (int k = 0; k <= 6; ++k) {
    const double exact = adaptive_integral(
        [&](double x) { return eval_dop(basis, k, std::span{&x, 1})(0) * w(x); },
        interval{-1.0, 1.0});
    CHECK(near(m.values[k], exact, 5e-8));
  }
}

TEST_CASE("a smooth weight matches adaptive integration to spectral accuracy") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 25), 6);
  const auto w = weight_fn::catalog(weight_kind::one_minus_x2);
  const moment_vector m = compute_moments(basis, w, 200);
  for (int k = 0; k <= 6; ++k) {
    const double exact = adaptive_integral(
        [&](double x) { return eval_dop(basis, k, std::span{&x, 1})(0) * w(x); },
        interval{-1.0, 1.0});
    CHECK(near(m.values[k], exact, 1e-12));
  }
}

TEST_CASE("the moment functional is linear in the weight") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 20), 5);
  const auto w_combined = weight_fn::custom("1-x^2", [](double x) { return 1.0 - x * x; });
  const auto w_one = weight_fn::catalog(weight_kind::one);
  const auto w_x2 = weight_fn::custom("x^2", [](double x) { return x * x; });
  const moment_vector mc = compute_moments(basis, w_combined);
  const moment_vector m1 = compute_moments(basis, w_one);
  const moment_vector m2 = compute_moments(basis, w_x2);
  for (int k = 0; k <= 5; ++k)
    CHECK(near(mc.values[k], m1.values[k] - m2.values[k], 1e-13));
}

TEST_CASE("a non-finite weight value raises an evaluation error") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 10), 2);
  const auto w = weight_fn::custom("sqrt(x-0.5)",
                                   [](double x) { return std::sqrt(x - 0.5); });
  CHECK_THROWS_AS(compute_moments(basis, w), evaluation_error);
}
