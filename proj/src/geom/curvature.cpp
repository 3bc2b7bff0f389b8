#include "circlesum/geom/curvature.hpp"

#include "circlesum/error.hpp"
#include "circlesum/simd/kernels.hpp"

#include <cmath>
#include <span>

namespace circlesum {

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()));
  const auto& ev = es.eigenvalues();
  const double lo = ev(0), hi = ev(ev.size() - 1);
  if (!(lo > kPositiveDefiniteFloor) || hi / lo > kMaxConditionNumber)
    throw Error(ErrorKind::metric_not_invertible,
                "smallest eigenvalue " + std::to_string(lo) + ", largest " + std::to_string(hi));
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

namespace {

// Gamma_{l,ij} stored with l innermost: lowered[(i*d + j)*d + l].
std::vector<double> lowered_christoffel(const MetricJets& mj) {
  const int d = mj.dim;
  std::vector<double> low(static_cast<std::size_t>(d) * d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        low[(i * d + j) * d + l] = 0.5 * (mj.d1(i, l, j) + mj.d1(j, l, i) - mj.d1(l, i, j));
  return low;
}

}  // namespace

Christoffel christoffel(const MetricJets& mj) {
  const int d = mj.dim;
  const Eigen::MatrixXd ginv = checked_inverse(mj.g);
  const std::vector<double> low = lowered_christoffel(mj);
  Christoffel c{d, std::vector<double>(static_cast<std::size_t>(d) * d * d)};
  for (int k = 0; k < d; ++k) {
    const std::span<const double> row(ginv.data() + k * d, d);  // symmetric: row == column
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        const double v = simd::dot(row, std::span<const double>(&low[(i * d + j) * d], d));
        c.data[(k * d + i) * d + j] = v;
        c.data[(k * d + j) * d + i] = v;
      }
  }
  return c;
}

Christoffel christoffel(const MetricField& m, const Point& p) { return christoffel(m.jets(p)); }

Riemann riemann(const MetricJets& mj) {
  const int d = mj.dim;
  const Christoffel up = christoffel(mj);
  const std::vector<double> low = lowered_christoffel(mj);
  // Upper Christoffels re-laid with the contracted index innermost.
  std::vector<double> upi(static_cast<std::size_t>(d) * d * d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) upi[(i * d + j) * d + k] = up(k, i, j);

  auto lo = [&](int a, int b) { return std::span<const double>(&low[(a * d + b) * d], d); };
  auto hi = [&](int a, int b) { return std::span<const double>(&upi[(a * d + b) * d], d); };

  Riemann r{d, std::vector<double>(static_cast<std::size_t>(d) * d * d * d, 0.0)};
  // R_iklm = 1/2 (g_im,kl + g_kl,im - g_il,km - g_km,il)
  //          + Gamma_{n,kl} Gamma^n_im - Gamma_{n,km} Gamma^n_il
  for (int i = 0; i < d; ++i)
    for (int k = i + 1; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int m = l + 1; m < d; ++m) {
          if (i * d + k > l * d + m) continue;
          const double second = 0.5 * (mj.d2(k, l, i, m) + mj.d2(i, m, k, l) -
                                        mj.d2(k, m, i, l) - mj.d2(i, l, k, m));
          const double quad = simd::dot(lo(k, l), hi(i, m)) - simd::dot(lo(k, m), hi(i, l));
          const double v = second + quad;
          auto put = [&](int a, int b, int c, int e, double s) {
            r.data[((a * d + b) * d + c) * d + e] = s;
          };
          put(i, k, l, m, v);
          put(k, i, l, m, -v);
          put(i, k, m, l, -v);
          put(k, i, m, l, v);
          put(l, m, i, k, v);
          put(m, l, i, k, -v);
          put(l, m, k, i, -v);
          put(m, l, k, i, v);
        }
  return r;
}

Riemann riemann(const MetricField& m, const Point& p) { return riemann(m.jets(p)); }

double gram_determinant(const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) {
  const double xx = x.dot(g * x), yy = y.dot(g * y), xy = x.dot(g * y);
  return xx * yy - xy * xy;
}

double sectional_curvature(const Riemann& r, const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
  const double gram = gram_determinant(g, x, y);
  if (!(gram > kDegeneratePlaneFloor))
    throw Error(ErrorKind::degenerate_plane, "Gram determinant " + std::to_string(gram));
  const int d = r.dim;
  // Bivector coefficients X^i Y^j; R(X,Y,X,Y) is the quadratic form of R
  // viewed as a d^2 x d^2 matrix.
  std::vector<double> v(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v[i * d + j] = x[i] * y[j];
  return simd::quadratic_form(r.data, v) / gram;
}

double sectional_curvature(const MetricField& m, const TwoPlane& plane) {
  const MetricJets mj = m.jets(plane.point);
  const double gram = gram_determinant(mj.g, plane.x, plane.y);
  if (!(gram > kDegeneratePlaneFloor))
    throw Error(ErrorKind::degenerate_plane, "Gram determinant " + std::to_string(gram));
  return sectional_curvature(riemann(mj), mj.g, plane.x, plane.y);
}

}  // namespace circlesum
