#include "circlesum/collapse/collapse_metric.hpp"

#include "circlesum/builders/action.hpp"
#include "circlesum/builders/sphere.hpp"
#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace circlesum {

namespace {

int last_round_factor(const ProductMetric& space) {
  for (int i = static_cast<int>(space.factors().size()) - 1; i >= 0; --i)
    if (space.factors()[i].kind() == Factor::Kind::round) return i;
  throw Error(ErrorKind::invalid_argument, "no sphere factor to act on");
}

void check_eps(double eps) {
  if (!(eps > 0.0) || eps > 1.0)
    throw Error(ErrorKind::epsilon_out_of_range, "epsilon " + format_double(eps) + " not in (0, 1]");
}

bool covers_from(const CircleAction& a, int first, int ambient) {
  std::vector<int> seen(ambient, 0);
  for (auto [i, j] : a.planes) {
    if (i < 0 || j < 0 || i >= ambient || j >= ambient) return false;
    ++seen[i];
    ++seen[j];
  }
  for (int k = 0; k < ambient; ++k)
    if (seen[k] != (k >= first ? 1 : 0)) return false;
  return true;
}

// Base product metric for S = double or Jet.
template <class S>
void product_metric_t(const ProductMetric& pm, std::span<const S> x, std::span<S> g) {
  const int d = pm.dim();
  for (std::size_t f = 0; f < pm.factors().size(); ++f) {
    const Factor& fac = pm.factors()[f];
    const int o = pm.offset(static_cast<int>(f));
    switch (fac.kind()) {
      case Factor::Kind::warped_disk: {
        g[o * d + o] = constant_like(1.0, x[0]);
        const S fv = apply_profile(fac.profile(), x[o]);
        g[(o + 1) * d + o + 1] = fv * fv;
        break;
      }
      case Factor::Kind::round:
        round_sphere_block(fac.dim(), fac.radius(), x.subspan(o, fac.dim()), g, d, o);
        break;
      case Factor::Kind::raw:
        throw Error(ErrorKind::invalid_argument, "collapse needs builder factors");
    }
  }
}

}  // namespace

std::string CircleAction::label() const {
  return kind + "@factor" + std::to_string(factor);
}

Eigen::MatrixXd CircleAction::generator(int ambient_dim) const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(ambient_dim, ambient_dim);
  for (auto [a, b] : planes) {
    j(a, b) = -1.0;
    j(b, a) = 1.0;
  }
  return j;
}

CircleAction hopf_action(const ProductMetric& space) {
  const int f = last_round_factor(space);
  const int n = space.factors()[f].ambient_dim();
  if (n % 2) throw Error(ErrorKind::invalid_argument, "Hopf action needs an odd sphere");
  CircleAction a{"hopf", f, {}};
  for (int i = 0; i + 1 < n; i += 2) a.planes.emplace_back(i, i + 1);
  return a;
}

CircleAction axis_action(const ProductMetric& space) {
  const int f = last_round_factor(space);
  const int n = space.factors()[f].ambient_dim();
  if (n % 2 == 0) throw Error(ErrorKind::invalid_argument, "axis rotation needs an even sphere");
  CircleAction a{"axis", f, {}};
  for (int i = 1; i + 1 < n; i += 2) a.planes.emplace_back(i, i + 1);
  return a;
}

Eigen::MatrixXd circle_matrix(const ProductMetric& space, const CircleAction& a, double t) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(space.ambient_dim(), space.ambient_dim());
  const int o = space.ambient_offset(a.factor);
  const double c = std::cos(t), s = std::sin(t);
  for (auto [i, j] : a.planes) {
    m(o + i, o + i) = c;
    m(o + i, o + j) = -s;
    m(o + j, o + i) = s;
    m(o + j, o + j) = c;
  }
  return m;
}

MetricField collapse_metric(const ProductMetric& block, const CircleAction& a, double eps,
                            const std::string& id) {
  check_eps(eps);
  const Factor& fac = block.factors().at(a.factor);
  if (fac.kind() != Factor::Kind::round)
    throw Error(ErrorKind::invalid_argument, "circle action must sit on a round sphere factor");
  const int m = fac.dim();
  const double r = fac.radius();
  const double c = (1.0 / (eps * eps) - 1.0) / (r * r);
  const int o = block.offset(a.factor);
  const int d = block.dim();
  const auto planes = a.planes;
  const std::string name =
      id.empty() ? block.realized().id() + "[" + a.kind + ",eps=" + format_double(eps) + "]" : id;
  return analytic_metric(name, block.realized().chart(), [=](auto x, auto g) {
    using S = std::decay_t<decltype(x[0])>;
    product_metric_t<S>(block, x, g);
    if (c == 0.0) return;
    std::vector<S> y, e;
    sphere_embed_jacobian_t(m, r, x.subspan(o, m), y, e);
    const S zero = constant_like(0.0, x[0]);
    std::vector<S> jy(m + 1, zero);
    for (auto [i, j] : planes) {
      jy[i] = -y[j];
      jy[j] = y[i];
    }
    std::vector<S> v(m, zero);
    S norm2 = zero;
    for (int b = 0; b <= m; ++b) {
      norm2 = norm2 + jy[b] * jy[b];
      for (int i = 0; i < m; ++i) v[i] = v[i] + e[b * m + i] * jy[b];
    }
    const S w = c / (1.0 + c * norm2);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) g[(o + i) * d + o + k] = g[(o + i) * d + o + k] - w * v[i] * v[k];
  });
}

double collapsed_volume(const ProductMetric& block, const CircleAction& a, double eps) {
  check_eps(eps);
  const Factor& fac = block.factors().at(a.factor);
  const int n = fac.ambient_dim();
  if (covers_from(a, 0, n)) return eps * block.volume();
  if (!covers_from(a, 1, n))
    throw Error(ErrorKind::invalid_argument, "no volume formula for action " + a.label());
  // |V|^2 = r^2 sin^2(phi_1); det shrinks by 1 / (1 + c |V|^2).
  const int m = fac.dim();
  const double c = 1.0 / (eps * eps) - 1.0;
  auto integrand = [&](double phi) {
    const double s = std::sin(phi);
    return std::pow(s, m - 1) / std::sqrt(1.0 + c * s * s);
  };
  using boost::math::quadrature::gauss_kronrod;
  const double half = gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::numbers::pi / 2,
                                                           15, 1e-13);
  const double sphere =
      std::pow(fac.radius(), m) * unit_sphere_volume(m - 1) * 2.0 * half;
  return block.volume() / fac.volume() * sphere;
}

}  // namespace circlesum
