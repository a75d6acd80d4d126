#include "lsquad/reference.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lsquad {

double adaptive_integral(const std::function<double(double)>& f, const interval& iv,
                         double tol) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, iv.a, iv.b, 15,
                                                                       tol);
}

double reference_integral(const test_fn& f, const weight_fn& w, const interval& iv) {
  const bool cacheable =
      f.kind() != testfn_kind::custom && w.kind() != weight_kind::custom;
  using key_t = std::tuple<std::string, std::string, double, double>;
  static std::map<key_t, double> cache;
  static std::mutex mutex;

  const key_t key{f.name(), w.name(), iv.a, iv.b};
  if (cacheable) {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double value =
      adaptive_integral([&](double x) { return f(x) * w(x); }, iv, 1e-13);
  if (cacheable) {
    std::lock_guard lock(mutex);
    cache.emplace(key, value);
  }
  return value;
}

}  // namespace lsquad
