#pragma once

#include "circlesum/builders/product.hpp"

#include <string>
#include <utility>
#include <vector>

namespace circlesum {

/// Circle acting on one round sphere factor by simultaneous rotation of
/// disjoint coordinate planes of its ambient space.
struct CircleAction {
  std::string kind;  // "hopf" or "axis"
  int factor = 0;
  std::vector<std::pair<int, int>> planes;

  std::string label() const;
  /// Infinitesimal generator on the factor's ambient space.
  Eigen::MatrixXd generator(int ambient_dim) const;
};

/// Hopf action on the last sphere factor (odd sphere): every ambient plane
/// (0,1), (2,3), ... turns, so the action is free.
CircleAction hopf_action(const ProductMetric& space);
/// Rotation about the y_0 axis of the last sphere factor (even sphere): the
/// planes (1,2), (3,4), ... turn and the poles +-e_0 are fixed.
CircleAction axis_action(const ProductMetric& space);

/// Ambient matrix of the time-t flow on the whole product (identity on the
/// other factors).
Eigen::MatrixXd circle_matrix(const ProductMetric& space, const CircleAction& a, double t);

/// Orbit-direction shrink: g_eps = g - c V V^T / (1 + c |V|^2) with V the
/// action field (lowered) and c = (1/eps^2 - 1) / r^2, which scales the
/// longest orbits by eps and leaves the orthogonal complement unchanged.
/// Near fixed points the orbit directions are shrunk less, which caps the
/// profile concavely with slope 1. Throws epsilon_out_of_range.
MetricField collapse_metric(const ProductMetric& block, const CircleAction& a, double eps,
                            const std::string& id = "");
/// Closed form for the Hopf action (eps times the volume); a one-dimensional
/// quadrature in the polar angle for the axis action.
double collapsed_volume(const ProductMetric& block, const CircleAction& a, double eps);

}  // namespace circlesum
