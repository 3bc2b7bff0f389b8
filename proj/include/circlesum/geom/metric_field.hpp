#pragma once

#include "circlesum/geom/chart.hpp"
#include "circlesum/geom/jet.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace circlesum {

/// Metric value and coordinate partials at one point.
/// dg[(k*d + i)*d + j] = d_k g_ij, d2g[((k*d + l)*d + i)*d + j] = d_k d_l g_ij.
struct MetricJets {
  int dim = 0;
  Eigen::MatrixXd g;
  std::vector<double> dg;
  std::vector<double> d2g;

  double d1(int k, int i, int j) const { return dg[(k * dim + i) * dim + j]; }
  double d2(int k, int l, int i, int j) const { return d2g[((k * dim + l) * dim + i) * dim + j]; }
};

/// A chart plus a point -> symmetric positive-definite matrix map.
/// Derivatives come from an analytic jet closure when the builder supplied
/// one and from central finite differences otherwise.
class MetricField {
 public:
  using ValueFn = std::function<Eigen::MatrixXd(const Point&)>;
  using JetFn = std::function<MetricJets(const Point&)>;

  MetricField(std::string id, Chart chart, ValueFn g, JetFn jets = {});

  const std::string& id() const { return id_; }
  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  bool has_analytic_derivatives() const { return static_cast<bool>(jets_); }

  /// Metric at p; p must be admissible in the chart.
  Eigen::MatrixXd g(const Point& p) const;
  /// Metric closure evaluated without the admissibility check (used by
  /// finite-difference probes and whole-box integration).
  Eigen::MatrixXd value_unchecked(const Point& p) const { return g_(p); }
  MetricJets jets(const Point& p) const;
  /// Finite-difference jets regardless of analytic availability.
  MetricJets fd_jets(const Point& p) const;
  /// Same field with the analytic closure dropped (forces finite differences).
  MetricField without_analytic_derivatives() const;
  MetricField renamed(std::string id) const;

 private:
  std::string id_;
  Chart chart_;
  ValueFn g_;
  JetFn jets_;
};

inline constexpr double kFirstDerivativeStep = 1e-3;
inline constexpr double kSecondDerivativeStep = 3e-3;
inline constexpr double kPositiveDefiniteFloor = 1e-10;

/// Builds a field from a generic callable `fn(std::span<const S> x, std::span<S> g)`
/// that writes the row-major metric for S = double and S = Jet.
template <class Fn>
MetricField analytic_metric(std::string id, Chart chart, Fn fn) {
  const int d = chart.dim();
  auto value = [fn, d](const Point& p) {
    std::vector<double> x(p.data(), p.data() + d);
    std::vector<double> out(static_cast<std::size_t>(d) * d, 0.0);
    fn(std::span<const double>(x), std::span<double>(out));
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = out[i * d + j];
    return g;
  };
  auto jets = [fn, d](const Point& p) {
    std::vector<Jet> x;
    x.reserve(d);
    for (int i = 0; i < d; ++i) x.push_back(Jet::variable(p[i], d, i));
    std::vector<Jet> out(static_cast<std::size_t>(d) * d, Jet(0.0, d));
    fn(std::span<const Jet>(x), std::span<Jet>(out));
    MetricJets mj;
    mj.dim = d;
    mj.g.resize(d, d);
    mj.dg.assign(static_cast<std::size_t>(d) * d * d, 0.0);
    mj.d2g.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Jet& e = out[i * d + j];
        mj.g(i, j) = e.value();
        for (int k = 0; k < d; ++k) {
          mj.dg[(k * d + i) * d + j] = e.grad(k);
          for (int l = 0; l < d; ++l) mj.d2g[((k * d + l) * d + i) * d + j] = e.hess(k, l);
        }
      }
    return mj;
  };
  return MetricField(std::move(id), std::move(chart), value, jets);
}

/// Smallest eigenvalue of the symmetric part of g.
double smallest_eigenvalue(const Eigen::MatrixXd& g);

}  // namespace circlesum
