#include "circlesum/builders/product.hpp"

#include "circlesum/builders/sphere.hpp"
#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace circlesum {

using std::numbers::pi;

MetricField warped_disk(const WarpProfile& profile, double margin) {
  auto shared = std::make_shared<const WarpProfile>(profile);
  return analytic_metric("D2[" + to_string(profile.kind()) + "]",
                         disk_chart(profile.t_max(), margin), [shared](auto x, auto g) {
                           g[0] = constant_like(1.0, x[0]);
                           const auto f = apply_profile(*shared, x[0]);
                           g[3] = f * f;
                         });
}

Factor Factor::round(int n, double radius) {
  if (n < 1 || !(radius > 0.0)) throw Error(ErrorKind::invalid_argument, "bad sphere factor");
  Factor f;
  f.kind_ = Kind::round;
  f.n_ = n;
  f.radius_ = radius;
  return f;
}

Factor Factor::warped_disk(WarpProfile profile) {
  Factor f;
  f.kind_ = Kind::warped_disk;
  f.n_ = 2;
  f.radius_ = profile.radius();
  f.profile_ = std::make_shared<const WarpProfile>(std::move(profile));
  return f;
}

Factor Factor::raw(MetricField field) {
  Factor f;
  f.kind_ = Kind::raw;
  f.n_ = field.dim();
  f.raw_ = std::make_shared<const MetricField>(std::move(field));
  return f;
}

int Factor::dim() const { return n_; }

std::string Factor::label() const {
  switch (kind_) {
    case Kind::round:
      return "S" + std::to_string(n_) + (radius_ == 1.0 ? "" : "(r=" + format_double(radius_) + ")");
    case Kind::warped_disk:
      return "D2[" + to_string(profile_->kind()) + "]";
    case Kind::raw:
      return raw_->id();
  }
  return "?";
}

MetricField Factor::metric(double margin) const {
  switch (kind_) {
    case Kind::round: return round_sphere(n_, radius_, margin);
    case Kind::warped_disk: return circlesum::warped_disk(*profile_, margin);
    case Kind::raw: return *raw_;
  }
  throw Error(ErrorKind::invalid_argument, "unknown factor kind");
}

int Factor::ambient_dim() const {
  if (kind_ == Kind::raw) throw Error(ErrorKind::invalid_argument, "raw factor has no embedding");
  return kind_ == Kind::round ? n_ + 1 : 2;
}

Eigen::VectorXd Factor::embed(const Point& local) const {
  if (kind_ == Kind::round) return sphere_embed(n_, radius_, local);
  if (kind_ == Kind::warped_disk)
    return Eigen::Vector2d(local[0] * std::cos(local[1]), local[0] * std::sin(local[1]));
  throw Error(ErrorKind::invalid_argument, "raw factor has no embedding");
}

Eigen::MatrixXd Factor::embed_jacobian(const Point& local) const {
  if (kind_ == Kind::round) return sphere_embed_jacobian(n_, radius_, local);
  if (kind_ == Kind::warped_disk) {
    Eigen::MatrixXd j(2, 2);
    const double t = local[0], c = std::cos(local[1]), s = std::sin(local[1]);
    j << c, -t * s, s, t * c;
    return j;
  }
  throw Error(ErrorKind::invalid_argument, "raw factor has no embedding");
}

Point Factor::from_ambient(const Eigen::VectorXd& y) const {
  if (kind_ == Kind::round) return sphere_coords(y);
  if (kind_ == Kind::warped_disk) {
    double th = std::atan2(y[1], y[0]);
    if (th < 0.0) th += 2.0 * pi;
    return Eigen::Vector2d(y.norm(), th);
  }
  throw Error(ErrorKind::invalid_argument, "raw factor has no embedding");
}

double Factor::volume() const {
  switch (kind_) {
    case Kind::round:
      return unit_sphere_volume(n_) * std::pow(radius_, n_);
    case Kind::warped_disk: {
      const WarpProfile& p = *profile_;
      using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
      auto f = [&](double t) { return p.f(t); };
      // Split at the profile's breakpoints so each panel is smooth.
      double area = GK::integrate(f, 0.0, p.blend_start(), 10, 1e-14);
      if (p.collar_start() > p.blend_start())
        area += GK::integrate(f, p.blend_start(), p.collar_start(), 10, 1e-14);
      area += p.f(p.t_max()) * (p.t_max() - p.collar_start());
      return 2.0 * pi * area;
    }
    case Kind::raw:
      throw Error(ErrorKind::raw_metric_needs_monte_carlo, raw_->id());
  }
  return 0.0;
}

MetricField product_field(const std::string& id, const std::vector<MetricField>& factors) {
  std::vector<Chart> charts;
  std::vector<int> offs{0};
  bool analytic = true;
  for (const auto& f : factors) {
    charts.push_back(f.chart());
    offs.push_back(offs.back() + f.dim());
    analytic = analytic && f.has_analytic_derivatives();
  }
  const int d = offs.back();
  auto value = [factors, offs, d](const Point& p) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const int o = offs[i], n = factors[i].dim();
      g.block(o, o, n, n) = factors[i].value_unchecked(p.segment(o, n));
    }
    return g;
  };
  MetricField::JetFn jets;
  if (analytic) {
    jets = [factors, offs, d](const Point& p) {
      MetricJets mj;
      mj.dim = d;
      mj.g = Eigen::MatrixXd::Zero(d, d);
      mj.dg.assign(static_cast<std::size_t>(d) * d * d, 0.0);
      mj.d2g.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
      for (std::size_t f = 0; f < factors.size(); ++f) {
        const int o = offs[f], n = factors[f].dim();
        const MetricJets fj = factors[f].jets(p.segment(o, n));
        mj.g.block(o, o, n, n) = fj.g;
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              mj.dg[((o + k) * d + o + i) * d + o + j] = fj.d1(k, i, j);
              for (int l = 0; l < n; ++l)
                mj.d2g[(((o + k) * d + o + l) * d + o + i) * d + o + j] = fj.d2(k, l, i, j);
            }
      }
      return mj;
    };
  }
  return MetricField(id, Chart::product(id, charts), value, jets);
}

namespace {

MetricField realize(const std::vector<Factor>& factors, double margin) {
  if (factors.empty()) throw Error(ErrorKind::invalid_argument, "empty product");
  std::vector<MetricField> fields;
  std::string id;
  for (const auto& f : factors) {
    fields.push_back(f.metric(margin));
    id += (id.empty() ? "" : "x") + f.label();
  }
  return factors.size() == 1 ? fields.front() : product_field(id, fields);
}

}  // namespace

ProductMetric::ProductMetric(std::vector<Factor> factors, double margin)
    : factors_(std::move(factors)), realized_(realize(factors_, margin)) {
  offsets_.push_back(0);
  ambient_offsets_.push_back(0);
  for (const auto& f : factors_) {
    offsets_.push_back(offsets_.back() + f.dim());
    ambient_offsets_.push_back(ambient_offsets_.back() + (f.embeddable() ? f.ambient_dim() : 0));
  }
}

int ProductMetric::disk_factor() const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].kind() == Factor::Kind::warped_disk) return static_cast<int>(i);
  return -1;
}

Point ProductMetric::local(const Point& p, int factor) const {
  return p.segment(offsets_[factor], factors_[factor].dim());
}

Eigen::VectorXd ProductMetric::embed(const Point& p) const {
  Eigen::VectorXd y(ambient_dim());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    y.segment(ambient_offsets_[i], factors_[i].ambient_dim()) = factors_[i].embed(local(p, i));
  return y;
}

Eigen::MatrixXd ProductMetric::embed_jacobian(const Point& p) const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(ambient_dim(), dim());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    j.block(ambient_offsets_[i], offsets_[i], factors_[i].ambient_dim(), factors_[i].dim()) =
        factors_[i].embed_jacobian(local(p, i));
  return j;
}

Point ProductMetric::from_ambient(const Eigen::VectorXd& y) const {
  Point p(dim());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    p.segment(offsets_[i], factors_[i].dim()) =
        factors_[i].from_ambient(y.segment(ambient_offsets_[i], factors_[i].ambient_dim()));
  return p;
}

double ProductMetric::volume() const {
  double v = 1.0;
  for (const auto& f : factors_) v *= f.volume();
  return v;
}

double monte_carlo_volume(const MetricField& m, int n_samples, std::uint64_t seed) {
  const Chart& c = m.chart();
  double box = 1.0;
  for (int i = 0; i < c.dim(); ++i) box *= c.axis(i).length();
  double sum = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd u = shifted_halton(c.dim(), static_cast<std::uint64_t>(s), seed);
    Point p(c.dim());
    for (int i = 0; i < c.dim(); ++i) p[i] = c.axis(i).lo + u[i] * c.axis(i).length();
    sum += std::sqrt(std::max(0.0, m.value_unchecked(c.wrap(p)).determinant()));
  }
  return box * sum / n_samples;
}

}  // namespace circlesum
