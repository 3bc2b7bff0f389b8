#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace circlesum {

using Point = Eigen::VectorXd;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Axis-aligned coordinate box. Periodic axes (angles) are wrapped into
/// [lo, hi) and never subject to the singular margin; every other axis keeps
/// samples at least `singular_margin` away from its endpoints, where the
/// coordinates degenerate (poles, disk centre).
class Chart {
 public:
  Chart(std::string name, std::vector<Interval> box, std::vector<bool> periodic,
        double singular_margin = 1e-3);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(box_.size()); }
  const Interval& axis(int i) const { return box_[i]; }
  bool periodic(int i) const { return periodic_[i]; }
  double singular_margin() const { return margin_; }

  bool in_interior(const Point& p) const;
  Point wrap(Point p) const;
  // Maps a unit-cube sample into the admissible interior.
  Point from_unit(const Eigen::VectorXd& u) const;
  // Throws point_outside_domain unless p (after wrapping) is admissible.
  Point require_interior(const Point& p) const;

  /// Concatenated chart of a product (axes in factor order).
  static Chart product(const std::string& name, const std::vector<Chart>& factors);

 private:
  std::string name_;
  std::vector<Interval> box_;
  std::vector<bool> periodic_;
  double margin_;
};

}  // namespace circlesum
