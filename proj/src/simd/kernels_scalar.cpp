#include "circlesum/simd/kernels.hpp"

#include <cstddef>

namespace circlesum::simd::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void matvec(std::span<const double> m, std::span<const double> v, std::span<double> out) {
  const std::size_t n = v.size();
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = dot(m.subspan(r * n, n), v);
}

double quadratic_form(std::span<const double> m, std::span<const double> v) {
  const std::size_t n = v.size();
  double s = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (v[r] == 0.0) continue;
    s += v[r] * dot(m.subspan(r * n, n), v);
  }
  return s;
}

}  // namespace circlesum::simd::scalar
