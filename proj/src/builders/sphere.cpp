#include "circlesum/builders/sphere.hpp"

#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <cmath>
#include <numbers>

namespace circlesum {

using std::numbers::pi;

Chart sphere_chart(int n, double margin, const std::string& name) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "sphere dimension must be >= 1");
  std::vector<Interval> box;
  std::vector<bool> periodic;
  for (int i = 0; i + 1 < n; ++i) {
    box.push_back({0.0, pi});
    periodic.push_back(false);
  }
  box.push_back({0.0, 2.0 * pi});
  periodic.push_back(true);
  return Chart(name.empty() ? "S" + std::to_string(n) : name, box, periodic, margin);
}

Chart disk_chart(double t_max, double margin, const std::string& name) {
  return Chart(name.empty() ? "D2" : name, {{0.0, t_max}, {0.0, 2.0 * pi}}, {false, true}, margin);
}

double unit_sphere_volume(int n) {
  return 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

Eigen::VectorXd sphere_embed(int n, double r, const Point& phi) {
  std::vector<double> y, e;
  sphere_embed_jacobian_t<double>(n, r, std::span<const double>(phi.data(), n), y, e);
  return Eigen::Map<Eigen::VectorXd>(y.data(), n + 1);
}

Eigen::MatrixXd sphere_embed_jacobian(int n, double r, const Point& phi) {
  std::vector<double> y, e;
  sphere_embed_jacobian_t<double>(n, r, std::span<const double>(phi.data(), n), y, e);
  Eigen::MatrixXd m(n + 1, n);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i) m(j, i) = e[j * n + i];
  return m;
}

Point sphere_coords(const Eigen::VectorXd& y) {
  const int n = static_cast<int>(y.size()) - 1;
  Point phi(n);
  for (int i = 0; i + 1 < n; ++i) phi[i] = std::atan2(y.tail(n - i).norm(), y[i]);
  double last = std::atan2(y[n], y[n - 1]);
  if (last < 0.0) last += 2.0 * pi;
  phi[n - 1] = last;
  return phi;
}

MetricField round_sphere(int n, double r, double margin) {
  const std::string id = "S" + std::to_string(n) + (r == 1.0 ? "" : "(r=" + format_double(r) + ")");
  return analytic_metric(id, sphere_chart(n, margin),
                         [n, r](auto x, auto g) { round_sphere_block(n, r, x, g, n, 0); });
}

}  // namespace circlesum
