#pragma once

#include "circlesum/collapse/fstructure.hpp"
#include "circlesum/geom/scan.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace circlesum {

struct TraceRow {
  double eps = 1.0;
  double volume = 0.0;
  double min_k = 0.0;
  double max_k = 0.0;
};

struct TraceOptions {
  int n_points = 1000;
  int n_planes = 5;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  double curvature_bound = 4.0 + 1e-3;  // |K| bound for the polarized verdict
  double volume_ratio_max = 0.05;
};

struct CollapseTrace {
  std::string manifold;
  bool polarized = false;
  std::vector<TraceRow> rows;
  double volume_ratio = 1.0;  // volume(eps_last) / volume(eps_first)
  std::string verdict;        // "bounded collapse", "lower-bounded collapse", "no collapse", "no verdict"

  bool pass() const { return verdict != "no collapse"; }
};

/// eps must be strictly decreasing in (0, 1]. Each row collapses both blocks
/// of `gs` along the structure's circle actions and scans them.
CollapseTrace collapse_trace(const FStructureSpec& s, const GluedSpace& gs,
                             const std::vector<double>& eps, const TraceOptions& opts = {});

/// Columns epsilon,volume,minK,maxK,verdict.
std::string trace_csv(const CollapseTrace& t);

}  // namespace circlesum
