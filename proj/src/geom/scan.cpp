#include "circlesum/geom/scan.hpp"

#include "circlesum/error.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace circlesum {
namespace {

constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t n, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (n > 0) {
    r += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return r;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

// Box-Muller on the raw engine keeps plane draws identical across standard
// library implementations.
double gaussian(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

Eigen::VectorXd shifted_halton(int dim, std::uint64_t index, std::uint64_t seed) {
  if (dim > static_cast<int>(kPrimes.size()))
    throw Error(ErrorKind::invalid_argument, "Halton sampling supports at most 16 dimensions");
  auto rng = stream(seed, 0x48414c54u, static_cast<std::uint64_t>(dim));
  Eigen::VectorXd u(dim);
  for (int i = 0; i < dim; ++i) {
    const double shift = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double x = radical_inverse(index + 1, kPrimes[i]) + shift;
    u[i] = x - std::floor(x);
  }
  return u;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_plane(const Eigen::MatrixXd& g,
                                                         std::uint64_t seed, int point_index,
                                                         int plane_index) {
  const int d = static_cast<int>(g.rows());
  auto rng = stream(seed, static_cast<std::uint64_t>(point_index) + 1,
                    static_cast<std::uint64_t>(plane_index) + 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd x(d), y(d);
    for (int i = 0; i < d; ++i) x[i] = gaussian(rng);
    for (int i = 0; i < d; ++i) y[i] = gaussian(rng);
    if (gram_determinant(g, x, y) < kDegeneratePlaneFloor) continue;
    x /= std::sqrt(x.dot(g * x));
    y -= x.dot(g * y) * x;
    const double ny = std::sqrt(y.dot(g * y));
    if (!(ny > 0.0)) continue;
    y /= ny;
    if (gram_determinant(g, x, y) < kDegeneratePlaneFloor) continue;
    return {x, y};
  }
  throw Error(ErrorKind::degenerate_plane, "could not draw a nondegenerate plane");
}

namespace {

std::pair<Eigen::VectorXd, Eigen::VectorXd> coordinate_plane(const Eigen::MatrixXd& g,
                                                             std::pair<int, int> ab) {
  const int d = static_cast<int>(g.rows());
  Eigen::VectorXd x = Eigen::VectorXd::Unit(d, ab.first), y = Eigen::VectorXd::Unit(d, ab.second);
  if (gram_determinant(g, x, y) < kDegeneratePlaneFloor)
    throw Error(ErrorKind::degenerate_plane, "degenerate coordinate plane");
  x /= std::sqrt(x.dot(g * x));
  y -= x.dot(g * y) * x;
  y /= std::sqrt(y.dot(g * y));
  return {x, y};
}

}  // namespace

ScanReport curvature_scan(const MetricField& m, const ScanOptions& opts) {
  if (opts.n_points < 1 || opts.n_planes < 1)
    throw Error(ErrorKind::invalid_argument, "scan needs at least one point and one plane");
  ScanReport rep;
  rep.metric_id = m.id();
  rep.n_points = opts.n_points;
  rep.n_planes = opts.n_planes;
  rep.seed = opts.seed;
  rep.tol = opts.tol;
  rep.min_k = std::numeric_limits<double>::infinity();
  rep.max_k = -std::numeric_limits<double>::infinity();

  const int d = m.dim();
  std::vector<std::pair<int, int>> pairs;
  if (opts.coordinate_planes)
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
  const int per_point = opts.n_planes + static_cast<int>(pairs.size());
  for (int i = 0; i < opts.n_points; ++i) {
    const Point p = m.chart().from_unit(shifted_halton(d, static_cast<std::uint64_t>(i), opts.seed));
    Riemann r;
    MetricJets mj;
    try {
      mj = m.jets(p);
      r = riemann(mj);
    } catch (const Error&) {
      rep.skipped += per_point;
      continue;
    }
    for (int j = 0; j < per_point; ++j) {
      try {
        auto [x, y] = j < opts.n_planes ? random_plane(mj.g, opts.seed, i, j)
                                        : coordinate_plane(mj.g, pairs[j - opts.n_planes]);
        const double k = sectional_curvature(r, mj.g, x, y);
        ++rep.evaluated;
        if (k < rep.min_k) {
          rep.min_k = k;
          rep.argmin = {p, x, y};
        }
        if (k > rep.max_k) rep.max_k = k;
      } catch (const Error&) {
        ++rep.skipped;
      }
    }
  }
  const long total = static_cast<long>(opts.n_points) * per_point;
  if (rep.evaluated == 0 || rep.skipped * 100L > total)
    throw Error(ErrorKind::too_many_skipped, std::to_string(rep.skipped) + " of " +
                                                 std::to_string(total) + " samples skipped on " +
                                                 m.id());
  return rep;
}

ScanReport merge_scans(std::string id, const std::vector<ScanReport>& parts) {
  if (parts.empty()) throw Error(ErrorKind::invalid_argument, "nothing to merge");
  ScanReport out = parts.front();
  out.metric_id = std::move(id);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const ScanReport& p = parts[i];
    out.n_points += p.n_points;
    out.evaluated += p.evaluated;
    out.skipped += p.skipped;
    if (p.min_k < out.min_k) {
      out.min_k = p.min_k;
      out.argmin = p.argmin;
    }
    out.max_k = std::max(out.max_k, p.max_k);
    out.tol = std::max(out.tol, p.tol);
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
}  // namespace

nlohmann::json to_json(const ScanReport& r) {
  return {
      {"metric_id", r.metric_id},
      {"n_points", r.n_points},
      {"n_planes", r.n_planes},
      {"seed", r.seed},
      {"tol", r.tol},
      {"min_k", r.min_k},
      {"max_k", r.max_k},
      {"evaluated", r.evaluated},
      {"skipped", r.skipped},
      {"verdict", r.verdict()},
      {"argmin",
       {{"point", as_vector(r.argmin.point)},
        {"x", as_vector(r.argmin.x)},
        {"y", as_vector(r.argmin.y)}}},
  };
}

std::string csv_header_scan() { return "metric-id,n_points,n_planes,seed,minK,maxK,verdict"; }

std::string csv_row(const ScanReport& r) {
  return r.metric_id + "," + std::to_string(r.n_points) + "," + std::to_string(r.n_planes) + "," +
         std::to_string(r.seed) + "," + format_double(r.min_k) + "," + format_double(r.max_k) +
         "," + r.verdict();
}

}  // namespace circlesum
