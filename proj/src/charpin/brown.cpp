#include "circlesum/charpin/brown.hpp"

#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <cmath>
#include <numbers>

namespace circlesum {

namespace {

void check_shape(const QuadraticEnhancement& e) {
  if (e.rank < 0 || e.rank > 24)
    throw Error(ErrorKind::invalid_argument, "enhancement rank must be in [0, 24]");
  if (static_cast<int>(e.q.size()) != e.rank || static_cast<int>(e.form.size()) != e.rank)
    throw Error(ErrorKind::invalid_argument, "enhancement data does not match its rank");
  for (const auto& row : e.form)
    if (static_cast<int>(row.size()) != e.rank)
      throw Error(ErrorKind::invalid_argument, "intersection form is not square");
}

int dot(const QuadraticEnhancement& e, unsigned x, unsigned y) {
  int s = 0;
  for (int i = 0; i < e.rank; ++i)
    if (x >> i & 1u)
      for (int j = 0; j < e.rank; ++j)
        if (y >> j & 1u) s += e.form[i][j];
  return s & 1;
}

}  // namespace

int QuadraticEnhancement::value(unsigned x) const {
  int s = 0;
  for (int i = 0; i < rank; ++i) {
    if (!(x >> i & 1u)) continue;
    s += q[i];
    for (int j = i + 1; j < rank; ++j)
      if (x >> j & 1u) s += 2 * (form[i][j] & 1);
  }
  return ((s % 4) + 4) % 4;
}

QuadraticEnhancement rp2_enhancement(int qa) { return {1, {{1}}, {qa}}; }

QuadraticEnhancement direct_sum(const QuadraticEnhancement& a, const QuadraticEnhancement& b) {
  QuadraticEnhancement r;
  r.rank = a.rank + b.rank;
  r.form.assign(r.rank, std::vector<int>(r.rank, 0));
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j) r.form[i][j] = a.form[i][j];
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j) r.form[a.rank + i][a.rank + j] = b.form[i][j];
  r.q = a.q;
  r.q.insert(r.q.end(), b.q.begin(), b.q.end());
  return r;
}

bool is_consistent(const QuadraticEnhancement& e) {
  check_shape(e);
  for (int i = 0; i < e.rank; ++i) {
    if ((((e.q[i] % 4) + 4) % 4 & 1) != (e.form[i][i] & 1)) return false;
    for (int j = 0; j < e.rank; ++j)
      if ((e.form[i][j] & 1) != (e.form[j][i] & 1)) return false;
  }
  if (e.rank > 10) return true;  // the pair sweep below is 4^rank
  const unsigned n = 1u << e.rank;
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      if (e.value(x ^ y) != (e.value(x) + e.value(y) + 2 * dot(e, x, y)) % 4) return false;
  return true;
}

bool is_nondegenerate(const QuadraticEnhancement& e) {
  check_shape(e);
  // Gaussian elimination over GF(2) on bit rows.
  std::vector<unsigned> rows(e.rank, 0);
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < e.rank; ++j)
      if (e.form[i][j] & 1) rows[i] |= 1u << j;
  int rank = 0;
  for (int col = 0; col < e.rank; ++col) {
    int pivot = -1;
    for (int r = rank; r < e.rank; ++r)
      if (rows[r] >> col & 1u) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < e.rank; ++r)
      if (r != rank && (rows[r] >> col & 1u)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank == e.rank;
}

std::complex<double> gauss_sum(const QuadraticEnhancement& e) {
  check_shape(e);
  long long count[4] = {0, 0, 0, 0};
  const unsigned n = 1u << e.rank;
  for (unsigned x = 0; x < n; ++x) ++count[e.value(x)];
  return {static_cast<double>(count[0] - count[2]), static_cast<double>(count[1] - count[3])};
}

int brown_invariant(const QuadraticEnhancement& e) {
  const std::complex<double> z = gauss_sum(e);
  const double expected = std::sqrt(std::ldexp(1.0, e.rank));
  if (std::abs(std::abs(z) - expected) > kGaussModulusTol * expected)
    throw Error(ErrorKind::gauss_sum_modulus_mismatch,
                "Gauss sum modulus " + format_double(std::abs(z)) + " != " +
                    format_double(expected));
  const double eighths = std::arg(z) / (std::numbers::pi / 4.0);
  const long k = std::lround(eighths);
  return static_cast<int>(((k % 8) + 8) % 8);
}

}  // namespace circlesum
