#pragma once

#include "circlesum/builders/profile.hpp"
#include "circlesum/geom/jet.hpp"
#include "circlesum/geom/metric_field.hpp"

#include <memory>
#include <string>
#include <vector>

namespace circlesum {

/// f(t) lifted to the builder scalar type.
inline double apply_profile(const WarpProfile& p, double t) { return p.f(t); }
inline Jet apply_profile(const WarpProfile& p, const Jet& t) {
  const double v = t.value();
  return t.apply(p.f(v), p.df(v), p.d2f(v));
}

MetricField warped_disk(const WarpProfile& profile, double margin = 1e-3);

/// One factor of a product metric.
class Factor {
 public:
  enum class Kind { round, warped_disk, raw };

  static Factor round(int n, double radius = 1.0);
  static Factor warped_disk(WarpProfile profile);
  static Factor raw(MetricField field);

  Kind kind() const { return kind_; }
  int dim() const;
  double radius() const { return radius_; }
  const WarpProfile& profile() const { return *profile_; }
  std::string label() const;

  MetricField metric(double margin = 1e-3) const;

  // Embedding used to express linear actions: spheres sit in R^(n+1) with
  // radius r, the disk in R^2 through geodesic polar coordinates.
  bool embeddable() const { return kind_ != Kind::raw; }
  int ambient_dim() const;
  Eigen::VectorXd embed(const Point& local) const;
  Eigen::MatrixXd embed_jacobian(const Point& local) const;
  Point from_ambient(const Eigen::VectorXd& y) const;
  /// Closed-form volume; raw factors throw raw_metric_needs_monte_carlo.
  double volume() const;

 private:
  Kind kind_ = Kind::round;
  int n_ = 0;
  double radius_ = 1.0;
  std::shared_ptr<const WarpProfile> profile_;
  std::shared_ptr<const MetricField> raw_;
};

/// Block-diagonal product of factor metrics.
class ProductMetric {
 public:
  explicit ProductMetric(std::vector<Factor> factors, double margin = 1e-3);

  const std::vector<Factor>& factors() const { return factors_; }
  const MetricField& realized() const { return realized_; }
  int dim() const { return realized_.dim(); }
  int offset(int factor) const { return offsets_[factor]; }
  int ambient_offset(int factor) const { return ambient_offsets_[factor]; }
  int ambient_dim() const { return ambient_offsets_.back(); }
  /// Index of the first warped-disk factor, or -1.
  int disk_factor() const;

  Point local(const Point& p, int factor) const;
  Eigen::VectorXd embed(const Point& p) const;
  Eigen::MatrixXd embed_jacobian(const Point& p) const;
  Point from_ambient(const Eigen::VectorXd& y) const;
  double volume() const;

 private:
  std::vector<Factor> factors_;
  std::vector<int> offsets_;
  std::vector<int> ambient_offsets_;
  MetricField realized_;
};

/// Block-diagonal product of arbitrary fields (analytic jets when every
/// factor has them).
MetricField product_field(const std::string& id, const std::vector<MetricField>& factors);

/// Box volume times the mean of sqrt(det g) over shifted Halton samples.
double monte_carlo_volume(const MetricField& m, int n_samples, std::uint64_t seed);

}  // namespace circlesum
