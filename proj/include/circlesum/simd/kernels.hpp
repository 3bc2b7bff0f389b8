#pragma once

// Dense contraction kernels used by the curvature pipeline.
//
// Every kernel has a portable scalar reference in `scalar::` and, on x86-64,
// an AVX2/FMA variant in `avx2::`. The unqualified entry points dispatch at
// runtime to the widest variant the CPU supports. Setting the environment
// variable CIRCLESUM_ISA=scalar before first use pins the scalar path.

#include <span>
#include <string_view>

namespace circlesum::simd {

enum class Isa { scalar, avx2 };

/// ISA selected for the unqualified kernels.
Isa active_isa();
std::string_view isa_name(Isa isa);
/// True when the running CPU can execute the AVX2 variants.
bool cpu_has_avx2();
/// Override dispatch (tests). Requesting avx2 on a CPU without it is ignored.
void set_isa(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
// v^T M v with M row-major n x n, n = v.size().
double quadratic_form(std::span<const double> m, std::span<const double> v);
// out = M v, M row-major rows x v.size().
void matvec(std::span<const double> m, std::span<const double> v, std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double quadratic_form(std::span<const double> m, std::span<const double> v);
void matvec(std::span<const double> m, std::span<const double> v, std::span<double> out);
}  // namespace scalar

#if defined(CIRCLESUM_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double quadratic_form(std::span<const double> m, std::span<const double> v);
void matvec(std::span<const double> m, std::span<const double> v, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace circlesum::simd
