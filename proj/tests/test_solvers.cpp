#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include <Eigen/Dense>

#include "lsquad/core.hpp"
#include "lsquad/diagnostics.hpp"
#include "lsquad/dop.hpp"
#include "lsquad/moments.hpp"
#include "lsquad/rng.hpp"
#include "lsquad/solvers.hpp"

using namespace lsquad;

namespace {
bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("constant exactness on four nodes gives the uniform rule") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 4), 0);
  const auto m = compute_moments(basis, weight_fn::catalog(weight_kind::one));
  const quad_rule rule = ls_weights(basis, m);
  REQUIRE(rule.weights.size() == 4);
  for (double w : rule.weights) CHECK(near(w, 0.5, 1e-14));
  CHECK(rule.meth == method::ls);
  CHECK(rule.target_degree == 0);
  CHECK(rule.exactness_residual.value() <= 1e-14);
}

TEST_CASE("two nodes with linear exactness recover the classical rule") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 2), 1);
  const auto m = compute_moments(basis, weight_fn::catalog(weight_kind::one));
  const quad_rule rule = ls_weights(basis, m);
  CHECK(near(rule.weights[0], 1.0, 1e-14));
  CHECK(near(rule.weights[1], 1.0, 1e-14));
}

TEST_CASE("an odd weight function zeroes the constant-exactness weights") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 5), 0);
  const auto w_odd = weight_fn::custom("x", [](double x) { return x; });
  const auto m = compute_moments(basis, w_odd);
  const quad_rule rule = ls_weights(basis, m);
  for (double w : rule.weights) CHECK(near(w, 0.0, 1e-15));
}

TEST_CASE("the least-squares solution has minimal Euclidean norm") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 40), 7);
  const auto m = compute_moments(basis, weight_fn::catalog(weight_kind::sqrt_one_minus_x2));
  const quad_rule rule = ls_weights(basis, m);

  const auto& a = basis.nodal_values();
  Eigen::VectorXd w(40);
  for (int i = 0; i < 40; ++i) w(i) = rule.weights[static_cast<std::size_t>(i)];

  // Perturb inside the null space of A: the exactness system stays solved and
  // the norm can only grow, by exactly the Pythagorean increment.
  rng gen(4);
  Eigen::VectorXd v(40);
  for (int i = 0; i < 40; ++i) v(i) = 2.0 * gen.uniform01() - 1.0;
  const Eigen::VectorXd v_perp = v - a.transpose() * (a * v);
  const Eigen::VectorXd w2 = w + v_perp;

  Eigen::VectorXd mv(8);
  for (int k = 0; k <= 7; ++k) mv(k) = m.values[static_cast<std::size_t>(k)];
  CHECK((a * w2 - mv).norm() <= 1e-12);
  CHECK(w2.norm() >= w.norm());
  CHECK(near(w2.squaredNorm(), w.squaredNorm() + v_perp.squaredNorm(), 1e-10));
}

TEST_CASE("the exactness residual stays at rounding level across sizes") {
  const auto w = weight_fn::catalog(weight_kind::cos_20pi_x);
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 500), 10);
  const auto m = compute_moments(basis, w);
  const quad_rule rule = ls_weights(basis, m);
  CHECK(rule.exactness_residual.value() <= 1e-13);
}

TEST_CASE("residuals of hand-built weight vectors") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 3), 0);
  const auto m = compute_moments(basis, weight_fn::catalog(weight_kind::one));
  // A = (1/sqrt(3), 1/sqrt(3), 1/sqrt(3)), m_0 = 2/sqrt(3).
  const std::vector<double> exact{1.0, 1.0, 0.0};
  CHECK(exactness_residual(basis, m, exact) <= 1e-14);
  const std::vector<double> off{1.0, 0.0, 0.0};
  // |1/sqrt(3) - 2/sqrt(3)| = 0.5773502691896257
  CHECK(near(exactness_residual(basis, m, off), 0.5773502691896257, 1e-13));

  const std::vector<double> wrong_size{1.0, 1.0};
  CHECK_THROWS_AS(exactness_residual(basis, m, wrong_size), std::invalid_argument);
}

TEST_CASE("sign-consistent weights on a positive weight function are plain nonnegative") {
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 3), 0);
  const auto w = weight_fn::catalog(weight_kind::one);
  const auto m = compute_moments(basis, w);
  const quad_rule rule = nnls_weights(basis, m, w);
  // The active-set sweep reaches the lowest-index column first and stops
  // there: all the mass lands on the first node.
  CHECK(near(rule.weights[0], 2.0, 1e-13));
  CHECK(rule.weights[1] == 0.0);
  CHECK(rule.weights[2] == 0.0);
  CHECK(rule.meth == method::nnls);
  CHECK(sign_consistency_measure(rule, w) == 0.0);
  CHECK(rule.exactness_residual.value() <= 1e-13);
}

TEST_CASE("sign-consistent weights track a sign-changing weight function") {
  const auto w = weight_fn::catalog(weight_kind::x_sqrt_one_minus_x3);
  const auto basis = build_dop_basis(make_equidistant(interval{-1.0, 1.0}, 60), 6);
  const auto m = compute_moments(basis, w);
  const quad_rule rule = nnls_weights(basis, m, w);
  CHECK(sign_consistency_measure(rule, w) == 0.0);
  for (int i = 0; i < 60; ++i) {
    const double wi = rule.weights[static_cast<std::size_t>(i)];
    if (wi != 0.0) CHECK(sign(wi) == sign(w(basis.nodeset().nodes[static_cast<std::size_t>(i)])));
  }
  // The support cannot exceed the number of exactness constraints.
  int support = 0;
  for (double wi : rule.weights)
    if (wi != 0.0) ++support;
  CHECK(support <= 7);
}

TEST_CASE("solver degree bookkeeping survives the round trip") {
  const auto basis = build_dop_basis(make_scattered(interval{-1.0, 1.0}, 35, 8), 4);
  const auto w = weight_fn::catalog(weight_kind::sqrt_one_minus_x2);
  const auto m = compute_moments(basis, w);
  const quad_rule ls = ls_weights(basis, m);
  CHECK(ls.target_degree == 4);
  CHECK(ls.nodeset.nodes == basis.nodeset().nodes);
  const quad_rule nn = nnls_weights(basis, m, w);
  CHECK(nn.target_degree == 4);
  CHECK(nn.weights.size() == 35);
}
