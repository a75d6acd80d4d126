#include "lsquad/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "lsquad/errors.hpp"
#include "lsquad/rng.hpp"

namespace lsquad {

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

interval::interval(double a_, double b_) : a(a_), b(b_) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("interval endpoints must be finite");
  if (!(a < b)) throw std::invalid_argument("interval requires a < b");
}

weight_fn::weight_fn(weight_kind kind, std::string name, std::function<double(double)> eval)
    : kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {}

weight_fn weight_fn::catalog(weight_kind kind) {
  switch (kind) {
    case weight_kind::one:
      return {kind, "1", [](double) { return 1.0; }};
    case weight_kind::one_minus_x2:
      return {kind, "1-x^2", [](double x) { return 1.0 - x * x; }};
    case weight_kind::sqrt_one_minus_x2:
      return {kind, "sqrt(1-x^2)", [](double x) { return std::sqrt(1.0 - x * x); }};
    case weight_kind::x_sqrt_one_minus_x3:
      return {kind, "x*sqrt(1-x^3)", [](double x) { return x * std::sqrt(1.0 - x * x * x); }};
    case weight_kind::cos_20pi_x:
      return {kind, "cos(20*pi*x)",
              [](double x) { return std::cos(20.0 * std::numbers::pi * x); }};
    case weight_kind::custom:
      break;
  }
  throw std::invalid_argument("weight_fn::catalog: not a catalog kind");
}

weight_fn weight_fn::custom(std::string name, std::function<double(double)> eval) {
  if (!eval) throw std::invalid_argument("weight_fn::custom: empty callable");
  return {weight_kind::custom, std::move(name), std::move(eval)};
}

void weight_fn::validate_on(const interval& iv) const {
  if (kind_ == weight_kind::x_sqrt_one_minus_x3 && iv.b > 1.0)
    throw std::invalid_argument("x*sqrt(1-x^3) requires b <= 1 (radicand nonnegativity)");
}

test_fn::test_fn(testfn_kind kind, std::string name, std::function<double(double)> eval)
    : kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {}

test_fn test_fn::abs_x3() {
  return {testfn_kind::abs_x3, "abs(x)^3", [](double x) { return std::abs(x * x * x); }};
}

test_fn test_fn::exp_x() {
  return {testfn_kind::exp_x, "exp(x)", [](double x) { return std::exp(x); }};
}

test_fn test_fn::custom(std::string name, std::function<double(double)> eval) {
  if (!eval) throw std::invalid_argument("test_fn::custom: empty callable");
  return {testfn_kind::custom, std::move(name), std::move(eval)};
}

node_set::node_set(interval iv_, std::vector<double> nodes_)
    : iv(iv_), nodes(std::move(nodes_)) {
  if (nodes.empty()) throw std::invalid_argument("node_set requires N >= 1");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || nodes[i] < iv.a || nodes[i] > iv.b)
      throw std::invalid_argument("node_set: node outside [a, b]");
    if (i > 0 && !(nodes[i - 1] < nodes[i]))
      throw std::invalid_argument("node_set: nodes must be strictly increasing");
  }
}

node_set make_equidistant(const interval& iv, int n) {
  if (n < 2) throw std::invalid_argument("make_equidistant requires N >= 2");
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double h = iv.length() / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = iv.a + h * i;
  xs.front() = iv.a;
  xs.back() = iv.b;
  return {iv, std::move(xs)};
}

node_set make_scattered(const interval& iv, int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_scattered requires N >= 2");
  node_set base = make_equidistant(iv, n);
  std::vector<double> xs = base.nodes;
  rng gen(seed);
  const double sigma = iv.length() / 2.0 / (4.0 * n);
  const double min_gap = 1e-12;
  for (int i = 1; i + 1 < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      const double cand = base.nodes[static_cast<std::size_t>(i)] + sigma * gen.gaussian();
      if (!(cand > iv.a && cand < iv.b)) continue;
      bool clear = true;
      // Nodes before i are already perturbed, nodes from i on still sit on the
      // grid; candidate must clear every currently placed point.
      for (int j = 0; j < n && clear; ++j)
        if (j != i && std::abs(cand - xs[static_cast<std::size_t>(j)]) <= min_gap) clear = false;
      if (clear) {
        xs[static_cast<std::size_t>(i)] = cand;
        placed = true;
      }
    }
    if (!placed)
      throw degeneracy_error("make_scattered: no admissible draw after 100 attempts");
  }
  std::sort(xs.begin() + 1, xs.end() - 1);
  return {iv, std::move(xs)};
}

const char* method_name(method m) {
  switch (m) {
    case method::ls:
      return "ls";
    case method::nnls:
      return "nnls";
    case method::trapezoid:
      return "trap";
  }
  return "?";
}

double apply_rule(const quad_rule& rule, const test_fn& f) {
  double q = 0.0;
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    const double fx = f(rule.nodeset.nodes[i]);
    if (!std::isfinite(fx))
      throw evaluation_error("apply_rule: test function non-finite at a node");
    q += rule.weights[i] * fx;
  }
  return q;
}

}  // namespace lsquad
