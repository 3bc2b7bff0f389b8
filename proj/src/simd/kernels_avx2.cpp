#include "circlesum/simd/kernels.hpp"

#include <immintrin.h>

#include <cstddef>

namespace circlesum::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double dot_raw(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  return dot_raw(a.data(), b.data(), a.size());
}

void matvec(std::span<const double> m, std::span<const double> v, std::span<double> out) {
  const std::size_t n = v.size();
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = dot_raw(m.data() + r * n, v.data(), n);
}

double quadratic_form(std::span<const double> m, std::span<const double> v) {
  const std::size_t n = v.size();
  double s = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (v[r] == 0.0) continue;
    s += v[r] * dot_raw(m.data() + r * n, v.data(), n);
  }
  return s;
}

}  // namespace circlesum::simd::avx2
