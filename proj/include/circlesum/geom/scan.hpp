#pragma once

#include "circlesum/geom/curvature.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace circlesum {

struct ScanWitness {
  Point point;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

struct ScanReport {
  std::string metric_id;
  int n_points = 0;
  int n_planes = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double min_k = 0.0;
  double max_k = 0.0;
  ScanWitness argmin;
  int evaluated = 0;
  int skipped = 0;

  bool nonnegative() const { return min_k >= -tol; }
  std::string verdict() const { return nonnegative() ? "nonnegative" : "negative"; }
};

struct ScanOptions {
  int n_points = 1000;
  int n_planes = 5;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  // Also evaluate every g-orthonormalized coordinate 2-plane at each point;
  // in product charts these realize the mixed (K = 0) and factor planes.
  bool coordinate_planes = true;
};

/// Unit-cube point `index` of a Halton sequence, shifted modulo 1 by a
/// seed-derived offset (Cranley-Patterson rotation).
Eigen::VectorXd shifted_halton(int dim, std::uint64_t index, std::uint64_t seed);

/// Random g-orthonormal pair from two standard Gaussian vectors; rejects
/// (and redraws) pairs whose Gram determinant falls below the floor.
/// Deterministic in (seed, point_index, plane_index).
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_plane(const Eigen::MatrixXd& g,
                                                         std::uint64_t seed, int point_index,
                                                         int plane_index);

/// Samples n_points low-discrepancy chart points and n_planes random planes
/// (plus the coordinate planes, if enabled) at each.
/// Samples that raise a geometry error are skipped and counted; more than 1%
/// skipped raises too_many_skipped.
ScanReport curvature_scan(const MetricField& m, const ScanOptions& opts);

/// Combines scans of several pieces (e.g. the two blocks of a glued space).
ScanReport merge_scans(std::string id, const std::vector<ScanReport>& parts);

nlohmann::json to_json(const ScanReport& r);
std::string csv_header_scan();
std::string csv_row(const ScanReport& r);

/// Shortest round-trip decimal form; used for every number in reports.
std::string format_double(double v);

}  // namespace circlesum
