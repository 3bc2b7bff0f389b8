#pragma once

#include <complex>
#include <vector>

namespace circlesum {

/// Z/4-valued quadratic refinement of a symmetric Z/2 form on (Z/2)^rank,
/// given on basis vectors and extended by q(x + y) = q(x) + q(y) + 2 (x.y).
struct QuadraticEnhancement {
  int rank = 0;
  std::vector<std::vector<int>> form;  // symmetric, entries in {0, 1}
  std::vector<int> q;                  // q(e_i) in Z/4

  /// Value on the vector with bit i of `x` as coordinate i.
  int value(unsigned x) const;
};

/// RP^2 with q(a) = qa (1 or 3 for its two pin- structures).
QuadraticEnhancement rp2_enhancement(int qa);
/// Orthogonal sum (disjoint union of surfaces).
QuadraticEnhancement direct_sum(const QuadraticEnhancement& a, const QuadraticEnhancement& b);

/// Symmetric, entries mod 2, q(e_i) = e_i.e_i mod 2, and the extension rule
/// agrees on every pair.
bool is_consistent(const QuadraticEnhancement& e);
bool is_nondegenerate(const QuadraticEnhancement& e);

/// Exact sum over all 2^rank elements of i^q(x).
std::complex<double> gauss_sum(const QuadraticEnhancement& e);

inline constexpr double kGaussModulusTol = 1e-9;

/// beta in Z/8 with gauss_sum = sqrt(2^rank) exp(2 pi i beta / 8). Throws
/// gauss_sum_modulus_mismatch when |gauss_sum| != sqrt(2^rank).
int brown_invariant(const QuadraticEnhancement& e);

}  // namespace circlesum
