// Compares the serial and OpenMP execution paths on the heavy kernels and
// checks that both produce bit-identical results. Wall times are medians of
// several repetitions.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "lsquad/core.hpp"
#include "lsquad/dop.hpp"
#include "lsquad/exec.hpp"
#include "lsquad/experiment.hpp"
#include "lsquad/expr.hpp"
#include "lsquad/moments.hpp"
#include "lsquad/rng.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_median_ms(F&& f, int reps) {
  std::vector<double> samples;
  samples.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

void report(const char* name, double seq_ms, double par_ms, bool identical) {
  std::printf("%-28s seq %9.2f ms   par %9.2f ms   speedup %5.2fx   %s\n", name,
              seq_ms, par_ms, seq_ms / par_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", lsquad::max_threads());
  bool all_identical = true;

  {
    const std::size_t n = 1 << 22;
    std::vector<double> x(n), y(n);
    lsquad::rng gen(7);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = gen.uniform01() - 0.5;
      y[i] = gen.uniform01() - 0.5;
    }
    double rs = 0, rp = 0;
    const double seq_ms = time_median_ms(
        [&] { rs = lsquad::blocked_dot(x.data(), y.data(), n, lsquad::exec::seq); }, 9);
    const double par_ms = time_median_ms(
        [&] { rp = lsquad::blocked_dot(x.data(), y.data(), n, lsquad::exec::par); }, 9);
    const bool same = rs == rp;
    all_identical = all_identical && same;
    report("blocked_dot (4M)", seq_ms, par_ms, same);
  }

  {
    const lsquad::interval iv{-1.0, 1.0};
    const auto nodes = lsquad::make_equidistant(iv, 4000);
    std::optional<lsquad::dop_basis> bs, bp;
    const double seq_ms =
        time_median_ms([&] { bs = lsquad::build_dop_basis(nodes, 40, lsquad::exec::seq); }, 3);
    const double par_ms =
        time_median_ms([&] { bp = lsquad::build_dop_basis(nodes, 40, lsquad::exec::par); }, 3);
    const bool same =
        bs->nodal_values() == bp->nodal_values() && bs->coeffs() == bp->coeffs();
    all_identical = all_identical && same;
    report("build_dop_basis (N=4000)", seq_ms, par_ms, same);
  }

  {
    const lsquad::interval iv{-1.0, 1.0};
    const auto nodes = lsquad::make_equidistant(iv, 2000);
    const auto basis = lsquad::build_dop_basis(nodes, 60, lsquad::exec::par);
    const auto w = lsquad::resolve_weight("cos(20*pi*x)");
    std::optional<lsquad::moment_vector> ms, mp;
    const double seq_ms = time_median_ms(
        [&] { ms = lsquad::compute_moments(basis, w, 2000, lsquad::exec::seq); }, 5);
    const double par_ms = time_median_ms(
        [&] { mp = lsquad::compute_moments(basis, w, 2000, lsquad::exec::par); }, 5);
    const bool same = ms->values == mp->values;
    all_identical = all_identical && same;
    report("compute_moments (J=2000)", seq_ms, par_ms, same);
  }

  {
    lsquad::experiment_config cfg;
    cfg.command = lsquad::command_kind::sweep;
    cfg.weight = "sqrt(1-x^2)";
    cfg.d = 10;
    cfg.has_n_range = true;
    cfg.n_from = 200;
    cfg.n_to = 1000;
    cfg.n_step = 100;
    cfg.meth = lsquad::method::ls;
    cfg.measure = lsquad::measure_kind::stability;
    std::string ss, sp;
    const double seq_ms =
        time_median_ms([&] { ss = lsquad::run_experiment(cfg, lsquad::exec::seq); }, 3);
    const double par_ms =
        time_median_ms([&] { sp = lsquad::run_experiment(cfg, lsquad::exec::par); }, 3);
    const bool same = ss == sp;
    all_identical = all_identical && same;
    report("sweep (d=10, 9 rows)", seq_ms, par_ms, same);
  }

  std::printf("\n%s\n", all_identical ? "all outputs identical across execution paths"
                                      : "OUTPUT MISMATCH between execution paths");
  return all_identical ? 0 : 1;
}
