#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lsquad {

// Sign function with sign(0) = +1. The positive zero convention matters: it
// fixes the NNLS sign matrix at nodes where the weight function vanishes.
double sign(double x);

// Closed integration domain [a, b].
struct interval {
  double a;
  double b;

  interval(double a_, double b_);  // requires a < b, both finite

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
};

enum class weight_kind { one, one_minus_x2, sqrt_one_minus_x2, x_sqrt_one_minus_x3, cos_20pi_x, custom };

// Weight function omega on an interval, possibly sign-changing. Catalog
// instances carry a canonical name that the CLI and CSV headers use; custom
// instances carry whatever name they were built with (e.g. expression text).
class weight_fn {
 public:
  static weight_fn catalog(weight_kind kind);
  static weight_fn custom(std::string name, std::function<double(double)> eval);

  double operator()(double x) const { return eval_(x); }
  weight_kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  // Domain constraint check: x*sqrt(1-x^3) needs b <= 1 for a real radicand.
  void validate_on(const interval& iv) const;

 private:
  weight_fn(weight_kind kind, std::string name, std::function<double(double)> eval);

  weight_kind kind_;
  std::string name_;
  std::function<double(double)> eval_;
};

enum class testfn_kind { abs_x3, exp_x, custom };

// Test integrand f for accuracy experiments.
class test_fn {
 public:
  static test_fn abs_x3();
  static test_fn exp_x();
  static test_fn custom(std::string name, std::function<double(double)> eval);

  double operator()(double x) const { return eval_(x); }
  testfn_kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  test_fn(testfn_kind kind, std::string name, std::function<double(double)> eval);

  testfn_kind kind_;
  std::string name_;
  std::function<double(double)> eval_;
};

// Strictly increasing, pairwise distinct quadrature points within [a, b].
struct node_set {
  interval iv;
  std::vector<double> nodes;

  node_set(interval iv_, std::vector<double> nodes_);  // validates the invariants

  int size() const { return static_cast<int>(nodes.size()); }
};

// Equidistant nodes x_n = a + (b-a)(n-1)/(N-1), ascending, endpoints included.
node_set make_equidistant(const interval& iv, int n);

// Equidistant nodes plus centered Gaussian jitter with standard deviation
// (b-a)/2 * 1/(4N) on the interior; endpoints stay exact. A draw that leaves
// (a, b) or lands within 1e-12 of an already placed node is redrawn (at most
// 100 attempts, then degeneracy_error); the result is re-sorted. Deterministic
// for a given seed.
node_set make_scattered(const interval& iv, int n, std::uint64_t seed);

enum class method { ls, nnls, trapezoid };

const char* method_name(method m);

// Nodes, weights and provenance of one quadrature rule; the central output
// artifact. For NNLS rules the producing solver checks sign-consistency at
// construction time.
struct quad_rule {
  node_set nodeset;
  std::vector<double> weights;
  method meth;
  std::optional<int> target_degree;
  std::optional<double> exactness_residual;
};

// Q_N[f] = sum_n w_n f(x_n). Throws evaluation_error if f is non-finite at a
// node.
double apply_rule(const quad_rule& rule, const test_fn& f);

}  // namespace lsquad
