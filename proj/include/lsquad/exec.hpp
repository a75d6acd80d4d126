#pragma once

#include <cstddef>

namespace lsquad {

// Execution policy for the hot kernels. `par` uses OpenMP when compiled in
// and degrades to sequential execution otherwise. Every kernel is written so
// that seq and par produce bit-identical results at any thread count; tests
// assert this, and the CSV reproducibility contract relies on it.
enum class exec { seq, par };

// Reductions are blocked with a fixed partition: per-block partial sums are
// computed (possibly concurrently) and then combined in block order. The
// summation order is therefore a function of the length alone, which is what
// makes the two policies bit-identical.
inline constexpr std::size_t dot_block = 512;

// Dot product of u and v with the blocked deterministic reduction.
double blocked_dot(const double* u, const double* v, std::size_t n, exec ex);

// Sum of |v[i]| with the same blocked reduction.
double blocked_abs_sum(const double* v, std::size_t n, exec ex);

// y[i] += a * x[i]; elementwise, so order never matters.
void axpy(double a, const double* x, double* y, std::size_t n, exec ex);

// v[i] *= a.
void scale(double a, double* v, std::size_t n, exec ex);

// Number of threads `par` may use (1 when OpenMP is not compiled in).
int max_threads();

}  // namespace lsquad
