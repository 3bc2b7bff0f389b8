#pragma once

// Round spheres in hyperspherical coordinates (phi_1, ..., phi_n):
//   y_1 = r cos phi_1
//   y_j = r sin phi_1 ... sin phi_{j-1} cos phi_j      (j < n + 1)
//   y_{n+1} = r sin phi_1 ... sin phi_n
// with phi_1..phi_{n-1} in [0, pi] (poles at the ends) and phi_n periodic.

#include "circlesum/geom/jet.hpp"
#include "circlesum/geom/metric_field.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace circlesum {

Chart sphere_chart(int n, double margin = 1e-3, const std::string& name = "");
Chart disk_chart(double t_max, double margin = 1e-3, const std::string& name = "");

/// Surface volume of the unit n-sphere.
double unit_sphere_volume(int n);

Eigen::VectorXd sphere_embed(int n, double r, const Point& phi);
/// (n+1) x n matrix of partials d y / d phi.
Eigen::MatrixXd sphere_embed_jacobian(int n, double r, const Point& phi);
/// Hyperspherical coordinates of the radial projection of y.
Point sphere_coords(const Eigen::VectorXd& y);

template <class S>
void sphere_embed_jacobian_t(int n, double r, std::span<const S> phi, std::vector<S>& y,
                             std::vector<S>& e /* (n+1) x n row-major */) {
  using std::cos;
  using std::sin;
  const S zero = constant_like(0.0, phi[0]);
  std::vector<S> s, c;
  for (int i = 0; i < n; ++i) {
    s.push_back(sin(phi[i]));
    c.push_back(cos(phi[i]));
  }
  y.assign(n + 1, zero);
  e.assign(static_cast<std::size_t>(n + 1) * n, zero);
  // prod_{l < j, l != skip} sin phi_l
  auto sin_prod = [&](int j, int skip) {
    S p = constant_like(r, phi[0]);
    for (int l = 0; l < j; ++l)
      if (l != skip) p = p * s[l];
    return p;
  };
  for (int j = 0; j <= n; ++j) {
    const bool last = j == n;
    const int limit = last ? n : j;  // sines multiplying y_j
    y[j] = last ? sin_prod(n, -1) : sin_prod(j, -1) * c[j];
    for (int i = 0; i < n; ++i) {
      S d = zero;
      if (i < limit) {
        d = sin_prod(limit, i) * c[i];
        if (!last) d = d * c[j];
      } else if (i == j && !last) {
        d = -(sin_prod(j, -1) * s[j]);
      }
      e[j * n + i] = d;
    }
  }
}

/// Round metric diag(r^2, r^2 sin^2 phi_1, ...) written into a d x d block.
template <class S>
void round_sphere_block(int n, double r, std::span<const S> phi, std::span<S> g, int stride,
                        int offset) {
  using std::sin;
  S w = constant_like(r * r, phi[0]);
  for (int i = 0; i < n; ++i) {
    g[(offset + i) * stride + offset + i] = w;
    const S si = sin(phi[i]);
    w = w * si * si;
  }
}

MetricField round_sphere(int n, double r, double margin = 1e-3);

}  // namespace circlesum
