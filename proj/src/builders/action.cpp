#include "circlesum/builders/action.hpp"

#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace circlesum {

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j = {{"check", v.check},   {"pass", v.pass},           {"defect", v.defect},
                      {"tol", v.tol},       {"n_samples", v.n_samples}};
  if (v.witness.size() > 0)
    j["witness"] = std::vector<double>(v.witness.data(), v.witness.data() + v.witness.size());
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

namespace ambient {

Eigen::MatrixXd identity(int n) { return Eigen::MatrixXd::Identity(n, n); }

Eigen::MatrixXd antipodal(int n) { return -Eigen::MatrixXd::Identity(n, n); }

Eigen::MatrixXd half_turn(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  a(n - 1, n - 1) = -1.0;
  a(n - 2, n - 2) = -1.0;
  return a;
}

Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(angle), s = std::sin(angle);
  a(i, i) = c;
  a(j, j) = c;
  a(i, j) = -s;
  a(j, i) = s;
  return a;
}

Eigen::MatrixXd hopf(int n, double angle) {
  if (n % 2 != 0) throw Error(ErrorKind::invalid_argument, "Hopf action needs even ambient dimension");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (int k = 0; k < n; k += 2) a *= plane_rotation(n, k, k + 1, angle);
  return a;
}

Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  int o = 0;
  for (const auto& b : blocks) {
    a.block(o, o, b.rows(), b.cols()) = b;
    o += static_cast<int>(b.rows());
  }
  return a;
}

}  // namespace ambient

IsometricAction half_turn_antipodal(const ProductMetric& space) {
  std::vector<Eigen::MatrixXd> blocks;
  for (std::size_t i = 0; i < space.factors().size(); ++i) {
    const int n = space.factors()[i].ambient_dim();
    blocks.push_back(i == 0 ? ambient::half_turn(n) : ambient::antipodal(n));
  }
  return {"(r,A)", 2, {ambient::block_diagonal(blocks)}};
}

SmoothMap linear_chart_map(const ProductMetric& space, const Eigen::MatrixXd& a,
                           const std::string& label) {
  const Chart chart = space.realized().chart();
  auto map = [space, a, chart](const Point& p) {
    return chart.wrap(space.from_ambient(a * space.embed(p)));
  };
  auto jac = [space, a, map](const Point& p) {
    const Point q = map(p);
    const Eigen::MatrixXd eq = space.embed_jacobian(q);
    const Eigen::MatrixXd left = (eq.transpose() * eq).ldlt().solve(eq.transpose());
    return Eigen::MatrixXd(left * a * space.embed_jacobian(p));
  };
  return {label, map, jac};
}

Verdict verify_isometry(const MetricField& m, const SmoothMap& phi, int n_samples, double tol,
                        std::uint64_t seed) {
  Verdict v{"isometry:" + phi.label, true, 0.0, tol, n_samples, {}, {}};
  const Chart& c = m.chart();
  for (int s = 0; s < n_samples; ++s) {
    const Point p = c.from_unit(shifted_halton(c.dim(), static_cast<std::uint64_t>(s), seed));
    const Point q = c.wrap(phi.map(p));
    if (!c.in_interior(q))
      throw Error(ErrorKind::map_leaves_domain, phi.label + " sends a sample outside " + c.name());
    const Eigen::MatrixXd j = phi.jacobian(p);
    const double defect = (j.transpose() * m.g(q) * j - m.g(p)).norm();
    if (defect > v.defect) {
      v.defect = defect;
      v.witness = p;
    }
  }
  v.pass = v.defect <= tol;
  return v;
}

namespace {

// A fixed point of `a` on the factor, if the factor has one.
std::optional<Eigen::VectorXd> factor_fixed_point(const Factor& f, const Eigen::MatrixXd& a) {
  if (f.kind() == Factor::Kind::warped_disk) return Eigen::VectorXd::Zero(2);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a - Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  lu.setThreshold(1e-12);
  const Eigen::MatrixXd ker = lu.kernel();
  if (lu.dimensionOfKernel() == 0 || ker.norm() == 0.0) return std::nullopt;
  return Eigen::VectorXd(f.radius() * ker.col(0).normalized());
}

}  // namespace

Verdict verify_free(const ProductMetric& space, const IsometricAction& action, int n_samples,
                    double tol, std::uint64_t seed) {
  if (action.group_order != 2 || action.generators.size() != 1)
    throw Error(ErrorKind::invalid_argument, "freeness check expects a single involution");
  const Eigen::MatrixXd& t = action.generators.front();
  Verdict v{"free:" + action.label, true, std::numeric_limits<double>::infinity(), tol, 0, {}, {}};
  auto consider = [&](const Eigen::VectorXd& y, const std::string& note) {
    const double dist = (t * y - y).norm();
    ++v.n_samples;
    if (dist < v.defect) {
      v.defect = dist;
      v.witness = y;
      v.note = note;
    }
  };
  const Chart& c = space.realized().chart();
  for (int s = 0; s < n_samples; ++s)
    consider(space.embed(c.from_unit(shifted_halton(c.dim(), static_cast<std::uint64_t>(s), seed))),
             "sampled");

  Eigen::VectorXd fixed(space.ambient_dim());
  bool has_fixed = true;
  for (std::size_t i = 0; i < space.factors().size() && has_fixed; ++i) {
    const Factor& f = space.factors()[i];
    const int o = space.ambient_offset(i), n = f.ambient_dim();
    auto fp = factor_fixed_point(f, t.block(o, o, n, n));
    if (fp) fixed.segment(o, n) = *fp;
    else has_fixed = false;
  }
  if (has_fixed) consider(fixed, "eigenspace fixed point");
  v.pass = v.defect >= tol;
  return v;
}

double involution_defect(const ProductMetric& space, const Eigen::MatrixXd& t, int n_samples,
                         std::uint64_t seed) {
  const Chart& c = space.realized().chart();
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Point p = c.from_unit(shifted_halton(c.dim(), static_cast<std::uint64_t>(s), seed));
    const Eigen::VectorXd y = space.embed(p);
    const Eigen::VectorXd back = space.embed(space.from_ambient(t * space.embed(space.from_ambient(t * y))));
    worst = std::max(worst, (back - y).norm());
  }
  return worst;
}

}  // namespace circlesum
