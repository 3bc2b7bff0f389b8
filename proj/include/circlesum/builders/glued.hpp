#pragma once

#include "circlesum/builders/loop.hpp"
#include "circlesum/builders/quotient.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace circlesum {

/// Fiber part of a boundary identification (theta, x) -> (theta, A(theta) x)
/// of S^1 x S^m, with A acting on the ambient R^(m+1) of the sphere.
struct BoundaryMap {
  std::string label;
  std::function<Eigen::MatrixXd(double)> fiber;
  std::function<Eigen::MatrixXd(double)> fiber_derivative;
};

/// The deck transformation of a block boundary is (theta, x) -> (theta + pi, -x),
/// so the quotient boundary circle is parametrised by 2 theta; the loop is
/// evaluated there, which makes the fiber map pi-periodic in theta.
BoundaryMap boundary_map(const RotationLoop& loop);

/// Two disk-bundle blocks identified along their boundaries.
class GluedSpace {
 public:
  GluedSpace(std::string id, QuotientMetric block_a, QuotientMetric block_b, RotationLoop loop,
             double collar_depth);
  GluedSpace(std::string id, QuotientMetric block_a, QuotientMetric block_b, RotationLoop loop,
             BoundaryMap map, double collar_depth);

  const std::string& id() const { return id_; }
  const QuotientMetric& block_a() const { return a_; }
  const QuotientMetric& block_b() const { return b_; }
  const RotationLoop& loop() const { return loop_; }
  const BoundaryMap& map() const { return map_; }
  double collar_depth() const { return collar_depth_; }
  /// Sphere factor dimension of the blocks (0 when the blocks are bare disks).
  int fiber_dim() const;
  double volume() const { return a_.volume() + b_.volume(); }

 private:
  std::string id_;
  QuotientMetric a_, b_;
  RotationLoop loop_;
  BoundaryMap map_;
  double collar_depth_;
};

struct BoundaryReport {
  std::string block_id;
  std::string profile;
  std::string mode;          // "product" (collar) or "jet" (hemisphere)
  double product_defect = 0;  // max |g - (dt^2 + r^2 dtheta^2 + g_S)| inside the collar
  double jet_defect = 0;      // max |odd t-derivative of g| at t_max up to jet_order
  double second_jet = 0;      // |d^2/dt^2 g_theta_theta| at t_max
  double tol = 0;
  bool product_pass = false;
  bool jet_pass = false;
  bool pass = false;  // product_pass for collar_torpedo, jet_pass for hemisphere
};

struct GluingReport {
  std::string map_label;
  double fiber_defect = 0;          // pullback of g_S by x -> A(theta)x, plus radial drift
  double full_pullback_defect = 0;  // pullback of dtheta^2 + g_S by the full differential
  double descends_defect = 0;       // |A(theta + pi) - A(theta)|: compatibility with the deck map
  double tol = 0;
  int n_samples = 0;
  bool pass = false;
};

struct GluedMetric {
  MetricField field;          // chart (s, theta, x), s in [0, 2 t_max]; block B for s > t_max
  std::vector<double> jet_defects;  // per order 0..jet_order
  double interface_s = 0;
};

/// Throws no_disk_factor when the cover has no warped disk.
BoundaryReport boundary_form_check(const QuotientMetric& q, double collar_depth, double tol,
                                   int n_samples = 200);

GluingReport gluing_isometry_check(const GluedSpace& gs, int n_samples, double tol);

/// Throws boundary_mismatch if the gluing check fails and jet_mismatch
/// (naming the first failing order) if the t-jets across the interface differ.
GluedMetric glued_metric(const GluedSpace& gs, double jet_tol = 1e-6);

nlohmann::json to_json(const BoundaryReport& r);
nlohmann::json to_json(const GluingReport& r);

}  // namespace circlesum
