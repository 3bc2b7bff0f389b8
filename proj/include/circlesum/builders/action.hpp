#pragma once

#include "circlesum/builders/product.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace circlesum {

/// Chart map with its differential.
struct SmoothMap {
  std::string label;
  std::function<Point(const Point&)> map;
  std::function<Eigen::MatrixXd(const Point&)> jacobian;
};

struct Verdict {
  std::string check;
  bool pass = false;
  double defect = 0.0;  // worst sampled defect (or min distance for freeness)
  double tol = 0.0;
  int n_samples = 0;
  Point witness;
  std::string note;
};

nlohmann::json to_json(const Verdict& v);

/// Finite group acting by linear isometries of the ambient embedding of a
/// product (block-diagonal orthogonal matrices, one block per factor).
struct IsometricAction {
  std::string label;
  int group_order = 2;
  std::vector<Eigen::MatrixXd> generators;
};

namespace ambient {
Eigen::MatrixXd identity(int n);
/// -I: the antipodal map on a sphere.
Eigen::MatrixXd antipodal(int n);
/// Rotation by pi in the last coordinate plane: on S^2 the half-turn about
/// the polar axis (fixing both poles), on the disk theta -> theta + pi.
Eigen::MatrixXd half_turn(int n);
/// Rotation by `angle` in the (i, j) coordinate plane.
Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle);
/// Hopf circle action e^{i angle} on C^{n/2} = R^n (n even).
Eigen::MatrixXd hopf(int n, double angle);
Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks);
}  // namespace ambient

/// The T of the catalog: half-turn on the first factor (disk or S^2),
/// antipodal map on every sphere factor after it.
IsometricAction half_turn_antipodal(const ProductMetric& space);

/// Chart map induced by an ambient linear map; the differential is
/// E(q)^+ A E(p) with E the embedding Jacobian and E^+ its left inverse.
SmoothMap linear_chart_map(const ProductMetric& space, const Eigen::MatrixXd& a,
                           const std::string& label);

/// pass iff max over samples of |D phi^T g(phi p) D phi - g(p)|_F <= tol.
/// Throws map_leaves_domain when a sample is sent outside the chart.
Verdict verify_isometry(const MetricField& m, const SmoothMap& phi, int n_samples, double tol,
                        std::uint64_t seed = 7);

/// pass iff the smallest ambient displacement |T y - y| over the samples is
/// >= tol. Fixed points predicted by the eigenspace of T (a pole of a
/// sphere factor, the disk centre) are always added to the samples.
Verdict verify_free(const ProductMetric& space, const IsometricAction& action, int n_samples,
                    double tol = 1e-6, std::uint64_t seed = 11);

/// Max |T(T(p)) - p| over samples, as an ambient distance.
double involution_defect(const ProductMetric& space, const Eigen::MatrixXd& t, int n_samples,
                         std::uint64_t seed = 13);

}  // namespace circlesum
