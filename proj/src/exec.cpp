#include "lsquad/exec.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lsquad {

namespace {

// Shared skeleton for the deterministic blocked reductions: `partial` maps a
// [begin, end) range to its partial sum, and partials are added in block
// order regardless of which thread produced them.
template <class Partial>
double blocked_reduce(std::size_t n, exec ex, Partial partial) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + dot_block - 1) / dot_block;
  if (nblocks == 1) return partial(std::size_t{0}, n);

  std::vector<double> partials(nblocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == exec::par)
#else
  (void)ex;
#endif
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * dot_block;
    const std::size_t end = begin + dot_block < n ? begin + dot_block : n;
    partials[static_cast<std::size_t>(b)] = partial(begin, end);
  }

  double sum = 0.0;
  for (double p : partials) sum += p;
  return sum;
}

}  // namespace

double blocked_dot(const double* u, const double* v, std::size_t n, exec ex) {
  return blocked_reduce(n, ex, [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += u[i] * v[i];
    return s;
  });
}

double blocked_abs_sum(const double* v, std::size_t n, exec ex) {
  return blocked_reduce(n, ex, [&](std::size_t begin, std::size_t end) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += v[i] < 0.0 ? -v[i] : v[i];
    return s;
  });
}

void axpy(double a, const double* x, double* y, std::size_t n, exec ex) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == exec::par && n >= dot_block)
#else
  (void)ex;
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] += a * x[i];
}

void scale(double a, double* v, std::size_t n, exec ex) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (ex == exec::par && n >= dot_block)
#else
  (void)ex;
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) v[i] *= a;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lsquad
