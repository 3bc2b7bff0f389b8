#include "circlesum/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace circlesum::simd {
namespace {

Isa detect() {
  if (const char* env = std::getenv("CIRCLESUM_ISA"); env && std::string(env) == "scalar")
    return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(CIRCLESUM_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) return;
  selected().store(isa, std::memory_order_relaxed);
}

#if defined(CIRCLESUM_HAVE_AVX2)
#define CIRCLESUM_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define CIRCLESUM_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double dot(std::span<const double> a, std::span<const double> b) {
  return CIRCLESUM_DISPATCH(dot, a, b);
}

double quadratic_form(std::span<const double> m, std::span<const double> v) {
  return CIRCLESUM_DISPATCH(quadratic_form, m, v);
}

void matvec(std::span<const double> m, std::span<const double> v, std::span<double> out) {
  CIRCLESUM_DISPATCH(matvec, m, v, out);
}

#undef CIRCLESUM_DISPATCH

}  // namespace circlesum::simd
