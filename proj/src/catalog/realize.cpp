#include "circlesum/catalog/realize.hpp"

#include "circlesum/error.hpp"

namespace circlesum {

QuotientMetric disk_block(const ManifoldDescriptor& d, ProfileKind kind) {
  ProductMetric cover({Factor::warped_disk(make_profile(kind, 1.0)), Factor::round(d.sphere_dim())});
  IsometricAction t = half_turn_antipodal(cover);
  return quotient(std::move(cover), std::move(t));
}

double default_collar_depth(const WarpProfile& p) {
  return p.kind() == ProfileKind::collar_torpedo ? p.t_max() - p.collar_start() : 0.1 * p.t_max();
}

Realization realize_checked(const ManifoldDescriptor& d, ProfileKind kind) {
  QuotientMetric a = disk_block(d, kind);
  QuotientMetric b = disk_block(d, kind);
  const WarpProfile& prof = a.cover().factors()[0].profile();
  const double depth = default_collar_depth(prof);
  const double tol = kind == ProfileKind::collar_torpedo ? kProductFormTol : kJetTol;
  std::array<BoundaryReport, 2> boundary{boundary_form_check(a, depth, tol),
                                         boundary_form_check(b, depth, tol)};
  for (const auto& r : boundary)
    if (!r.pass)
      throw Error(ErrorKind::boundary_mismatch,
                  d.tag() + ": boundary check (" + r.mode + ") failed on " + r.block_id);
  GluedSpace space(d.tag(), std::move(a), std::move(b), d.loop(), depth);
  GluingReport gluing = gluing_isometry_check(space, kGluingSamples, kIsometryTol);
  if (!gluing.pass)
    throw Error(ErrorKind::boundary_mismatch, d.tag() + ": gluing isometry check failed");
  GluedMetric glued = glued_metric(space, kJetTol);
  return Realization{d, kind, std::move(space), boundary, gluing, std::move(glued)};
}

GluedSpace realize(const ManifoldDescriptor& d, ProfileKind kind) {
  return realize_checked(d, kind).space;
}

QuotientMetric bundle_metric(const ManifoldDescriptor& d) {
  if (d.j != 0)
    throw Error(ErrorKind::invalid_argument, d.tag() + " is not a sphere bundle (j = 2)");
  ProductMetric cover({Factor::round(2), Factor::round(d.sphere_dim())});
  IsometricAction t = half_turn_antipodal(cover);
  return quotient(std::move(cover), std::move(t));
}

}  // namespace circlesum
