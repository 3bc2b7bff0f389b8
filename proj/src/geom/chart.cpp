#include "circlesum/geom/chart.hpp"

#include "circlesum/error.hpp"

#include <algorithm>
#include <cmath>

namespace circlesum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::point_outside_domain: return "point-outside-domain";
    case ErrorKind::metric_not_invertible: return "metric-not-invertible-at-point";
    case ErrorKind::degenerate_plane: return "degenerate-plane";
    case ErrorKind::too_many_skipped: return "too-many-skipped-samples";
    case ErrorKind::map_leaves_domain: return "map-leaves-domain";
    case ErrorKind::action_not_isometric: return "action-not-isometric";
    case ErrorKind::action_not_free: return "action-not-free";
    case ErrorKind::blend_failed_concavity: return "blend-failed-concavity";
    case ErrorKind::no_disk_factor: return "no-disk-factor";
    case ErrorKind::boundary_mismatch: return "boundary-mismatch";
    case ErrorKind::jet_mismatch: return "jet-mismatch";
    case ErrorKind::raw_metric_needs_monte_carlo: return "raw-metric-needs-monte-carlo";
    case ErrorKind::gauss_sum_modulus_mismatch: return "gauss-sum-modulus-mismatch";
    case ErrorKind::structure_mismatch: return "structure-mismatch";
    case ErrorKind::not_a_recognized_double: return "not-a-recognized-double";
    case ErrorKind::missing_characteristic_tag: return "missing-characteristic-tag";
    case ErrorKind::unknown_descriptor: return "unknown-descriptor";
    case ErrorKind::item_violation: return "item-violation";
    case ErrorKind::epsilon_out_of_range: return "epsilon-out-of-range";
  }
  return "unknown-error";
}

Chart::Chart(std::string name, std::vector<Interval> box, std::vector<bool> periodic,
             double singular_margin)
    : name_(std::move(name)), box_(std::move(box)), periodic_(std::move(periodic)),
      margin_(singular_margin) {
  if (box_.empty()) throw Error(ErrorKind::invalid_argument, "chart dimension must be >= 1");
  if (periodic_.size() != box_.size())
    throw Error(ErrorKind::invalid_argument, "periodic flags do not match chart dimension");
  if (margin_ < 0.0) throw Error(ErrorKind::invalid_argument, "negative singular margin");
  double shortest = box_.front().length();
  for (const auto& iv : box_) {
    if (!(iv.hi > iv.lo)) throw Error(ErrorKind::invalid_argument, "empty chart interval");
    shortest = std::min(shortest, iv.length());
  }
  if (margin_ >= 0.5 * shortest)
    throw Error(ErrorKind::invalid_argument, "singular margin exceeds half the shortest interval");
}

bool Chart::in_interior(const Point& p) const {
  if (p.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!std::isfinite(p[i])) return false;
    if (periodic_[i]) continue;
    if (p[i] < box_[i].lo + margin_ || p[i] > box_[i].hi - margin_) return false;
  }
  return true;
}

Point Chart::wrap(Point p) const {
  for (int i = 0; i < dim() && i < p.size(); ++i) {
    if (!periodic_[i]) continue;
    const double len = box_[i].length();
    double x = std::fmod(p[i] - box_[i].lo, len);
    if (x < 0.0) x += len;
    p[i] = box_[i].lo + x;
  }
  return p;
}

Point Chart::from_unit(const Eigen::VectorXd& u) const {
  Point p(dim());
  for (int i = 0; i < dim(); ++i) {
    const double m = periodic_[i] ? 0.0 : margin_;
    p[i] = box_[i].lo + m + u[i] * (box_[i].length() - 2.0 * m);
  }
  return p;
}

Point Chart::require_interior(const Point& p) const {
  Point w = wrap(p);
  if (!in_interior(w))
    throw Error(ErrorKind::point_outside_domain, "point outside chart '" + name_ + "'");
  return w;
}

Chart Chart::product(const std::string& name, const std::vector<Chart>& factors) {
  std::vector<Interval> box;
  std::vector<bool> periodic;
  double margin = 0.0;
  for (const auto& c : factors) {
    for (int i = 0; i < c.dim(); ++i) {
      box.push_back(c.axis(i));
      periodic.push_back(c.periodic(i));
    }
    margin = std::max(margin, c.singular_margin());
  }
  return Chart(name, std::move(box), std::move(periodic), margin);
}

}  // namespace circlesum
