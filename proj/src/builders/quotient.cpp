#include "circlesum/builders/quotient.hpp"

#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

namespace circlesum {

QuotientMetric quotient(ProductMetric cover, IsometricAction action, int n_samples) {
  QuotientMetric q(std::move(cover), std::move(action));
  const ProductMetric& c = q.cover_;
  if (q.action_.group_order != 2 || q.action_.generators.size() != 1)
    throw Error(ErrorKind::invalid_argument, "only free involutions are supported");
  const Eigen::MatrixXd& t = q.action_.generators.front();
  if (t.rows() != c.ambient_dim())
    throw Error(ErrorKind::invalid_argument, "action does not match the cover's ambient space");

  q.isometry_ = verify_isometry(c.realized(), linear_chart_map(c, t, q.action_.label), n_samples,
                                kIsometryTol);
  if (!q.isometry_.pass)
    throw Error(ErrorKind::action_not_isometric,
                q.action_.label + " defect " + format_double(q.isometry_.defect));
  const double inv = involution_defect(c, t, n_samples);
  if (inv > 1e-10)
    throw Error(ErrorKind::action_not_isometric,
                q.action_.label + " is not an involution (defect " + format_double(inv) + ")");
  q.freeness_ = verify_free(c, q.action_, n_samples);
  if (!q.freeness_.pass)
    throw Error(ErrorKind::action_not_free,
                q.action_.label + " moves a point by only " + format_double(q.freeness_.defect));

  q.id_ = c.realized().id() + "/" + q.action_.label;
  q.fundamental_domain_ = c.disk_factor() == 0 ? "theta in [0, pi) on the disk factor"
                                               : "first polar angle in [0, pi/2] on the first factor";
  q.justification_ = "free isometric Z/2 action: the projection is a local isometry";
  return q;
}

QuotientMetric trivial_quotient(ProductMetric cover) {
  const int n = cover.ambient_dim();
  QuotientMetric q(std::move(cover), IsometricAction{"id", 1, {ambient::identity(n)}});
  q.id_ = q.cover_.realized().id();
  q.fundamental_domain_ = "whole chart";
  q.justification_ = "trivial group";
  q.isometry_ = {"isometry:id", true, 0.0, 0.0, 0, {}, {}};
  q.freeness_ = {"free:id", true, 0.0, 0.0, 0, {}, "trivial group"};
  return q;
}

}  // namespace circlesum
