#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lsquad {

// Runtime numerical failures. Contract violations (bad arguments, dimension
// mismatches, out-of-range indices) throw std::invalid_argument instead.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gram-Schmidt (or a similar factorization) met a numerically rank-deficient
// system, e.g. clustered nodes whose residual norm falls below threshold.
class degeneracy_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// A user-supplied function produced a non-finite value where a finite one is
// required (weight or test function evaluated at a node).
class evaluation_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// An iteration failed to converge within its budget (Newton root finding,
// active-set solve).
class convergence_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// A scan exhausted its cap without meeting the stopping criterion. Carries
// the kappa profile observed along the way so callers can diagnose why.
class search_error : public numerical_error {
 public:
  search_error(const std::string& what, std::vector<double> kappa_profile)
      : numerical_error(what), kappa_profile_(std::move(kappa_profile)) {}

  const std::vector<double>& kappa_profile() const noexcept { return kappa_profile_; }

 private:
  std::vector<double> kappa_profile_;
};

}  // namespace lsquad
