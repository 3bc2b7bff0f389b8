#include "circlesum/simd/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace circlesum;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 36u}) {
    const auto a = random_vector(rng, n), b = random_vector(rng, n), m = random_vector(rng, n * n);
    double d = 0.0, q = 0.0;
    for (std::size_t i = 0; i < n; ++i) d += a[i] * b[i];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q += a[i] * m[i * n + j] * a[j];
    CHECK(rel(simd::scalar::dot(a, b), d) < 1e-14);
    CHECK(rel(simd::scalar::quadratic_form(m, a), q) < 1e-13);
    std::vector<double> out(n);
    simd::scalar::matvec(m, a, out);
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) r += m[i * n + j] * a[j];
      CHECK(rel(out[i], r) < 1e-14);
    }
  }
}

#if defined(CIRCLESUM_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!simd::cpu_has_avx2()) return;
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 40; ++n) {
    const auto a = random_vector(rng, n), b = random_vector(rng, n), m = random_vector(rng, n * n);
    CHECK(rel(simd::avx2::dot(a, b), simd::scalar::dot(a, b)) < 1e-13);
    CHECK(rel(simd::avx2::quadratic_form(m, a), simd::scalar::quadratic_form(m, a)) < 1e-12);
    std::vector<double> o1(n), o2(n);
    simd::avx2::matvec(m, a, o1);
    simd::scalar::matvec(m, a, o2);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel(o1[i], o2[i]) < 1e-13);
  }
}
#endif

TEST_CASE("dispatch can be pinned to scalar") {
  const auto before = simd::active_isa();
  simd::set_isa(simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(simd::dot(a, b) == doctest::Approx(32.0));
  simd::set_isa(before);
  CHECK(simd::active_isa() == before);
}
