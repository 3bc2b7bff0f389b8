#pragma once

#include "circlesum/builders/action.hpp"

#include <string>

namespace circlesum {

/// A quotient by a free isometric action, represented by its cover. All
/// curvature queries are answered on the cover, which is a local isometry.
class QuotientMetric {
 public:
  const std::string& id() const { return id_; }
  const ProductMetric& cover() const { return cover_; }
  const IsometricAction& action() const { return action_; }
  const std::string& fundamental_domain() const { return fundamental_domain_; }
  const std::string& justification() const { return justification_; }
  const Verdict& isometry() const { return isometry_; }
  const Verdict& freeness() const { return freeness_; }

  /// Cover metric, relabelled with the quotient id.
  MetricField metric() const { return cover_.realized().renamed(id_); }
  double volume() const { return cover_.volume() / action_.group_order; }

  friend QuotientMetric quotient(ProductMetric cover, IsometricAction action, int n_samples);
  friend QuotientMetric trivial_quotient(ProductMetric cover);

 private:
  QuotientMetric(ProductMetric cover, IsometricAction action)
      : cover_(std::move(cover)), action_(std::move(action)) {}

  std::string id_;
  ProductMetric cover_;
  IsometricAction action_;
  std::string fundamental_domain_;
  std::string justification_;
  Verdict isometry_;
  Verdict freeness_;
};

inline constexpr double kIsometryTol = 1e-10;

/// Verifies every generator (isometry, involution, freeness) and builds the
/// quotient. Throws action_not_isometric / action_not_free.
QuotientMetric quotient(ProductMetric cover, IsometricAction action, int n_samples = 400);
/// Group of order one; used for blocks that are not quotiented.
QuotientMetric trivial_quotient(ProductMetric cover);

}  // namespace circlesum
