#include "circlesum/geom/metric_field.hpp"

#include "circlesum/error.hpp"

namespace circlesum {

MetricField::MetricField(std::string id, Chart chart, ValueFn g, JetFn jets)
    : id_(std::move(id)), chart_(std::move(chart)), g_(std::move(g)), jets_(std::move(jets)) {
  if (!g_) throw Error(ErrorKind::invalid_argument, "metric field without a value map");
}

Eigen::MatrixXd MetricField::g(const Point& p) const { return g_(chart_.require_interior(p)); }

MetricJets MetricField::jets(const Point& p) const {
  if (jets_) return jets_(chart_.require_interior(p));
  return fd_jets(p);
}

MetricJets MetricField::fd_jets(const Point& p0) const {
  const Point p = chart_.require_interior(p0);
  const int d = dim();
  MetricJets mj;
  mj.dim = d;
  mj.g = g_(p);
  mj.dg.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  mj.d2g.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);

  // Finite-difference probes may step past the sampling margin (and across a
  // coordinate pole); they are evaluated on the raw closure, which is defined
  // there.
  std::vector<double> h1(d), h2(d);
  for (int k = 0; k < d; ++k) {
    h1[k] = kFirstDerivativeStep * chart_.axis(k).length();
    h2[k] = kSecondDerivativeStep * chart_.axis(k).length();
  }
  // Sixth-order central stencils. Near a pole the metric entries are small
  // and the Christoffels divide by them, so the truncation error must stay
  // well below the roundoff floor.
  static constexpr double w1[] = {-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0};        // / 60h
  static constexpr double w2[] = {2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0};  // / 180h^2
  auto shifted = [&](int k, int sk, int l, int sl) {
    Point q = p;
    q[k] += sk * h2[k];
    q[l] += sl * h2[l];
    return g_(q);
  };
  auto store = [&](std::vector<double>& out, std::size_t base, const Eigen::MatrixXd& m) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[base + i * d + j] = m(i, j);
  };
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(d, d);
    for (int s = -3; s <= 3; ++s) {
      if (s == 0) continue;
      Point q = p;
      q[k] += s * h1[k];
      diff += w1[s + 3] * g_(q);
    }
    store(mj.dg, static_cast<std::size_t>(k) * d * d, diff / (60.0 * h1[k]));
  }
  for (int k = 0; k < d; ++k) {
    for (int l = k; l < d; ++l) {
      Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(d, d);
      if (k == l) {
        for (int s = -3; s <= 3; ++s) diff += w2[s + 3] * (s == 0 ? mj.g : shifted(k, s, k, 0));
        diff /= 180.0 * h2[k] * h2[k];
      } else {
        for (int s = -3; s <= 3; ++s)
          for (int t = -3; t <= 3; ++t)
            if (s && t) diff += w1[s + 3] * w1[t + 3] * shifted(k, s, l, t);
        diff /= 3600.0 * h2[k] * h2[l];
      }
      store(mj.d2g, (static_cast<std::size_t>(k) * d + l) * d * d, diff);
      store(mj.d2g, (static_cast<std::size_t>(l) * d + k) * d * d, diff);
    }
  }
  return mj;
}

MetricField MetricField::without_analytic_derivatives() const {
  return MetricField(id_, chart_, g_);
}

MetricField MetricField::renamed(std::string id) const {
  return MetricField(std::move(id), chart_, g_, jets_);
}

double smallest_eigenvalue(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace circlesum
