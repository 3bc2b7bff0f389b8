#include "circlesum/builders/glued.hpp"

#include "circlesum/builders/sphere.hpp"
#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace circlesum {

using std::numbers::pi;

namespace {

struct Block {
  const WarpProfile* profile = nullptr;
  int sphere_dim = 0;
  double sphere_radius = 1.0;
};

Block block_of(const QuotientMetric& q) {
  const auto& cover = q.cover();
  const int d = cover.disk_factor();
  if (d != 0)
    throw Error(ErrorKind::no_disk_factor, q.id() + ": first factor is not a warped disk");
  Block b;
  b.profile = &cover.factors()[0].profile();
  const auto& fs = cover.factors();
  if (fs.size() > 2)
    throw Error(ErrorKind::invalid_argument, q.id() + ": block must be D2 or D2 x S^m");
  if (fs.size() == 2) {
    if (fs[1].kind() != Factor::Kind::round)
      throw Error(ErrorKind::invalid_argument, q.id() + ": fiber factor must be a round sphere");
    b.sphere_dim = fs[1].dim();
    b.sphere_radius = fs[1].radius();
  }
  return b;
}

// d^n/dt^n of f(t)^2 by Leibniz.
double square_derivative(const WarpProfile& p, int n, double t) {
  double s = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    s += binom * p.derivative(k, t) * p.derivative(n - k, t);
    binom = binom * (n - k) / (k + 1);
  }
  return s;
}

}  // namespace

BoundaryMap boundary_map(const RotationLoop& loop) {
  return {loop.label(), [loop](double theta) { return loop.at(2.0 * theta); },
          [loop](double theta) { return Eigen::MatrixXd(2.0 * loop.derivative(2.0 * theta)); }};
}

GluedSpace::GluedSpace(std::string id, QuotientMetric block_a, QuotientMetric block_b,
                       RotationLoop loop, double collar_depth)
    : GluedSpace(std::move(id), std::move(block_a), std::move(block_b), loop, boundary_map(loop),
                 collar_depth) {}

GluedSpace::GluedSpace(std::string id, QuotientMetric block_a, QuotientMetric block_b,
                       RotationLoop loop, BoundaryMap map, double collar_depth)
    : id_(std::move(id)),
      a_(std::move(block_a)),
      b_(std::move(block_b)),
      loop_(std::move(loop)),
      map_(std::move(map)),
      collar_depth_(collar_depth) {
  if (!(collar_depth_ > 0.0)) throw Error(ErrorKind::invalid_argument, "collar depth must be > 0");
  const Block ba = block_of(a_), bb = block_of(b_);
  if (ba.sphere_dim != bb.sphere_dim)
    throw Error(ErrorKind::invalid_argument, id_ + ": blocks have different fiber dimensions");
  if (ba.sphere_dim > 0 && loop_.n() != ba.sphere_dim + 1)
    throw Error(ErrorKind::invalid_argument,
                id_ + ": loop must act on R^" + std::to_string(ba.sphere_dim + 1));
}

int GluedSpace::fiber_dim() const { return block_of(a_).sphere_dim; }

BoundaryReport boundary_form_check(const QuotientMetric& q, double collar_depth, double tol,
                                   int n_samples) {
  const Block b = block_of(q);
  const WarpProfile& prof = *b.profile;
  const double tm = prof.t_max();
  if (!(collar_depth > 0.0) || collar_depth > tm)
    throw Error(ErrorKind::invalid_argument, "collar depth must lie in (0, t_max]");

  BoundaryReport r;
  r.block_id = q.id();
  r.profile = to_string(prof.kind());
  r.mode = prof.kind() == ProfileKind::collar_torpedo ? "product" : "jet";
  r.tol = tol;

  const MetricField& m = q.cover().realized();
  const Chart& chart = m.chart();
  const int dim = m.dim();
  const double rr = prof.radius() * prof.radius();
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXd u = shifted_halton(dim, static_cast<std::uint64_t>(s) + 1, 29);
    Point p = chart.from_unit(u);
    p[0] = tm - collar_depth * u[0];
    Eigen::MatrixXd g = m.value_unchecked(p);
    Eigen::MatrixXd ref = g;
    ref.block(0, 0, 2, dim).setZero();
    ref.block(0, 0, dim, 2).setZero();
    ref(0, 0) = 1.0;
    ref(1, 1) = rr;
    r.product_defect = std::max(r.product_defect, (g - ref).cwiseAbs().maxCoeff());
  }
  // Only g_theta_theta = f^2 depends on t.
  for (int n = 1; n <= prof.jet_order(); n += 2)
    r.jet_defect = std::max(r.jet_defect, std::abs(square_derivative(prof, n, tm)));
  r.second_jet = std::abs(square_derivative(prof, 2, tm));
  r.product_pass = r.product_defect <= tol;
  r.jet_pass = r.jet_defect <= tol;
  r.pass = prof.kind() == ProfileKind::collar_torpedo ? r.product_pass : r.jet_pass;
  return r;
}

GluingReport gluing_isometry_check(const GluedSpace& gs, int n_samples, double tol) {
  GluingReport r;
  r.map_label = gs.map().label;
  r.tol = tol;
  r.n_samples = n_samples;
  const int m = gs.fiber_dim();
  if (m == 0) {
    r.pass = true;
    return r;
  }
  const Block b = block_of(gs.block_a());
  const double rd = b.profile->radius();
  const double rs = b.sphere_radius;
  const Chart chart = sphere_chart(m, 1e-3);
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXd u = shifted_halton(m + 1, static_cast<std::uint64_t>(s) + 1, 31);
    const double theta = 2.0 * pi * u[0];
    const Point phi = chart.from_unit(u.tail(m));
    const Eigen::VectorXd y = sphere_embed(m, rs, phi);
    const Eigen::MatrixXd e = sphere_embed_jacobian(m, rs, phi);
    const Eigen::MatrixXd a = gs.map().fiber(theta);
    const Eigen::MatrixXd da = gs.map().fiber_derivative(theta);

    // Fiber: x -> A x restricted to the sphere, compared in the ambient round metric.
    const Eigen::MatrixXd ae = a * e;
    const double fiber = (ae.transpose() * ae - e.transpose() * e).norm() +
                         std::abs((a * y).norm() - rs);
    r.fiber_defect = std::max(r.fiber_defect, fiber);

    r.descends_defect = std::max(r.descends_defect, (gs.map().fiber(theta + pi) - a).norm());

    // Full differential on (theta, x): the theta direction picks up A'(theta) y.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m + 2, m + 1);
    jac(0, 0) = 1.0;
    jac.block(1, 0, m + 1, 1) = da * y;
    jac.block(1, 1, m + 1, m) = ae;
    Eigen::MatrixXd amb = Eigen::MatrixXd::Identity(m + 2, m + 2);
    amb(0, 0) = rd * rd;
    Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(m + 1, m + 1);
    ref(0, 0) = rd * rd;
    ref.block(1, 1, m, m) = e.transpose() * e;
    r.full_pullback_defect =
        std::max(r.full_pullback_defect, (jac.transpose() * amb * jac - ref).norm());
  }
  r.pass = r.fiber_defect <= tol && r.descends_defect <= tol;
  return r;
}

GluedMetric glued_metric(const GluedSpace& gs, double jet_tol) {
  const GluingReport gr = gluing_isometry_check(gs, 200, kIsometryTol);
  if (!gr.pass)
    throw Error(ErrorKind::boundary_mismatch,
                gs.id() + ": gluing map is not a boundary isometry (defect " +
                    format_double(gr.fiber_defect) + ")");

  const Block a = block_of(gs.block_a()), b = block_of(gs.block_b());
  const double ta = a.profile->t_max(), tb = b.profile->t_max();
  const int order = std::min(a.profile->jet_order(), b.profile->jet_order());

  std::vector<double> defects;
  for (int n = 0; n <= order; ++n) {
    // s = t_a on A and s = t_a + t_b - t_b' on B, so B's n-th jet picks up (-1)^n.
    const double sign = n % 2 ? -1.0 : 1.0;
    double defect = std::abs(square_derivative(*a.profile, n, ta) -
                             sign * square_derivative(*b.profile, n, tb));
    if (n == 0) defect += std::abs(a.sphere_radius - b.sphere_radius);
    defects.push_back(defect);
    if (defect > jet_tol)
      throw Error(ErrorKind::jet_mismatch, gs.id() + ": interface jets differ at order " +
                                               std::to_string(n) + " (defect " +
                                               format_double(defect) + ")");
  }

  const int m = a.sphere_dim;
  std::vector<Chart> charts{Chart("s,theta", {{0.0, ta + tb}, {0.0, 2.0 * pi}}, {false, true})};
  if (m > 0) charts.push_back(sphere_chart(m));
  const Chart chart = Chart::product(gs.id(), charts);
  const WarpProfile pa = *a.profile, pb = *b.profile;
  const double rs = a.sphere_radius;
  auto field = analytic_metric(gs.id(), chart, [=](auto x, auto g) {
    const int d = m + 2;
    g[0] = constant_like(1.0, x[0]);
    const auto f = value_of(x[0]) <= ta ? apply_profile(pa, x[0])
                                        : apply_profile(pb, (ta + tb) - x[0]);
    g[d + 1] = f * f;
    if (m > 0) round_sphere_block(m, rs, x.subspan(2), g, d, 2);
  });
  return GluedMetric{std::move(field), std::move(defects), ta};
}

nlohmann::json to_json(const BoundaryReport& r) {
  return {{"block", r.block_id},         {"profile", r.profile},
          {"mode", r.mode},              {"product_defect", r.product_defect},
          {"jet_defect", r.jet_defect},  {"second_jet", r.second_jet},
          {"tol", r.tol},                {"product_pass", r.product_pass},
          {"jet_pass", r.jet_pass},      {"verdict", r.pass ? "pass" : "fail"}};
}

nlohmann::json to_json(const GluingReport& r) {
  return {{"map", r.map_label},
          {"fiber_defect", r.fiber_defect},
          {"descends_defect", r.descends_defect},
          {"full_pullback_defect", r.full_pullback_defect},
          {"tol", r.tol},
          {"n_samples", r.n_samples},
          {"verdict", r.pass ? "pass" : "fail"}};
}

}  // namespace circlesum
