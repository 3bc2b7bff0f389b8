#pragma once

#include "circlesum/builders/glued.hpp"
#include "circlesum/catalog/descriptor.hpp"

#include <array>

namespace circlesum {

/// A descriptor turned into metrics, with every builder check that was run.
struct Realization {
  ManifoldDescriptor descriptor;
  ProfileKind profile;
  GluedSpace space;
  std::array<BoundaryReport, 2> boundary;
  GluingReport gluing;
  GluedMetric glued;
};

inline constexpr int kGluingSamples = 1000;
inline constexpr double kProductFormTol = 1e-9;
inline constexpr double kJetTol = 1e-6;

/// Block for one side: (D^2 x S^m) / (r, A) with unit radii.
QuotientMetric disk_block(const ManifoldDescriptor& d, ProfileKind kind);
/// Collar depth used by realize: the full product collar for collar_torpedo,
/// a tenth of t_max for the hemisphere (checked at jet level only).
double default_collar_depth(const WarpProfile& p);

/// Builds both blocks, glues them with the descriptor's loop and runs the
/// isometry, freeness, boundary, gluing and jet checks. The first failing
/// check aborts with its error kind and name.
Realization realize_checked(const ManifoldDescriptor& d, ProfileKind kind);
GluedSpace realize(const ManifoldDescriptor& d, ProfileKind kind);

/// j = 0 only: the bundle S^2 x S^m / (r, A) as a direct quotient.
QuotientMetric bundle_metric(const ManifoldDescriptor& d);

}  // namespace circlesum
