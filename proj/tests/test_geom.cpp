#include "circlesum/builders/product.hpp"
#include "circlesum/builders/profile.hpp"
#include "circlesum/builders/sphere.hpp"
#include "circlesum/error.hpp"
#include "circlesum/geom/curvature.hpp"
#include "circlesum/geom/scan.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <type_traits>

using namespace circlesum;
using std::numbers::pi;

namespace {

// g = diag(1, f(t)^2) on (t, theta), with f given by value and two derivatives.
template <class F>
MetricField diagonal_surface(const std::string& id, double t_lo, double t_hi, F f) {
  Chart chart(id, {{t_lo, t_hi}, {0.0, 2 * pi}}, {false, true});
  return analytic_metric(id, chart, [f](auto x, auto g) {
    using S = std::remove_cv_t<std::remove_reference_t<decltype(x[0])>>;
    S ft;
    if constexpr (std::is_same_v<S, double>) {
      ft = f(x[0])[0];
    } else {
      const auto v = f(x[0].value());
      ft = x[0].apply(v[0], v[1], v[2]);
    }
    g[0] = constant_like(1.0, x[0]);
    g[3] = ft * ft;
  });
}

auto sine = [](double t) { return std::array<double, 3>{std::sin(t), std::cos(t), -std::sin(t)}; };
auto sinh_f = [](double t) {
  return std::array<double, 3>{std::sinh(t), std::cosh(t), std::sinh(t)};
};

MetricField flat(int d) {
  std::vector<Interval> box(d, Interval{-1.0, 1.0});
  Chart chart("flat", box, std::vector<bool>(d, false));
  return analytic_metric("flat", chart, [d](auto x, auto g) {
    for (int i = 0; i < d; ++i) g[i * d + i] = constant_like(1.0, x[0]);
  });
}

// A metric with every entry nonconstant, to exercise off-diagonal terms.
MetricField skew_metric() {
  Chart chart("skew", {{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}, {false, false, false});
  return analytic_metric("skew", chart, [](auto x, auto g) {
    using std::cos;
    using std::sin;
    g[0] = 2.0 + sin(x[1]) * x[2];
    g[4] = 1.5 + x[0] * x[0];
    g[8] = 1.0 + 0.3 * cos(x[0] + x[1]);
    g[1] = g[3] = 0.2 * x[2] * x[0];
    g[2] = g[6] = 0.1 * sin(x[1]);
    g[5] = g[7] = 0.15 * x[0] * x[1];
  });
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

}  // namespace

TEST_CASE("flat metric has vanishing Christoffels and curvature") {
  const auto m = flat(3);
  const auto p = pt({0.1, -0.2, 0.3});
  for (double v : christoffel(m, p).data) CHECK(v == 0.0);
  for (double v : riemann(m, p).data) CHECK(v == 0.0);
}

TEST_CASE("2x2 diagonal Christoffels match the closed form") {
  const auto m = diagonal_surface("s2", 0.0, pi, sine);
  const double t = pi / 3;
  const auto c = christoffel(m, pt({t, 0.0}));
  CHECK(c(0, 1, 1) == doctest::Approx(-std::sin(t) * std::cos(t)).epsilon(1e-12));
  CHECK(c(1, 0, 1) == doctest::Approx(std::cos(t) / std::sin(t)).epsilon(1e-12));
  CHECK(c(1, 1, 0) == doctest::Approx(c(1, 0, 1)));
  CHECK(std::abs(c(0, 0, 0)) < 1e-14);

  SUBCASE("warped disk") {
    const auto prof = make_profile(ProfileKind::hemisphere, 1.0);
    const auto disk = warped_disk(prof);
    for (double s : {0.2, 0.7, 1.3}) {
      const auto cd = christoffel(disk, pt({s, 1.0}));
      CHECK(cd(0, 1, 1) == doctest::Approx(-prof.f(s) * prof.df(s)).epsilon(1e-10));
      CHECK(cd(1, 0, 1) == doctest::Approx(prof.df(s) / prof.f(s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("round sphere curvature") {
  SUBCASE("unit S2 component") {
    const auto m = round_sphere(2, 1.0);
    for (double t : {0.3, 1.0, 2.5}) {
      const auto r = riemann(m, pt({t, 0.4}));
      CHECK(r(0, 1, 0, 1) == doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-10));
    }
  }
  SUBCASE("S^n of radius r matches g_ik g_jl - g_il g_jk over r^2") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4}) {
      for (double radius : {0.5, 1.0, 2.0}) {
        const auto m = round_sphere(n, radius);
        for (int s = 0; s < 10; ++s) {
          const Point p = m.chart().from_unit(shifted_halton(n, s, 3));
          const auto g = m.g(p);
          const auto r = riemann(m, p);
          const double k = 1.0 / (radius * radius);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                  const double want = k * (g(i, a) * g(j, b) - g(i, b) * g(j, a));
                  CHECK(std::abs(r(i, j, a, b) - want) < 1e-8 * std::max(1.0, radius * radius));
                }
        }
      }
    }
  }
}

TEST_CASE("Riemann symmetries and first Bianchi identity") {
  const auto m = skew_metric();
  for (int s = 0; s < 20; ++s) {
    const Point p = m.chart().from_unit(shifted_halton(3, s, 11));
    const auto r = riemann(m, p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            CHECK(std::abs(r(i, j, k, l) + r(j, i, k, l)) < 1e-10);
            CHECK(std::abs(r(i, j, k, l) + r(i, j, l, k)) < 1e-10);
            CHECK(std::abs(r(i, j, k, l) - r(k, l, i, j)) < 1e-10);
            CHECK(std::abs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)) < 1e-10);
          }
  }
}

TEST_CASE("finite-difference derivatives agree with analytic ones") {
  const std::vector<MetricField> fields = {
      skew_metric(), round_sphere(3, 1.5),
      warped_disk(make_profile(ProfileKind::collar_torpedo, 1.0)),
      product_field("s2xs3", {round_sphere(2, 1.0), round_sphere(3, 1.0)})};
  for (const auto& m : fields) {
    CAPTURE(m.id());
    const auto fd = m.without_analytic_derivatives();
    CHECK(m.has_analytic_derivatives());
    CHECK_FALSE(fd.has_analytic_derivatives());
    for (int s = 0; s < 100; ++s) {
      const Point p = m.chart().from_unit(shifted_halton(m.dim(), s, 5));
      const auto a = christoffel(m, p), b = christoffel(fd, p);
      for (std::size_t i = 0; i < a.data.size(); ++i) CHECK(rel(b.data[i], a.data[i]) < 1e-6);
    }
  }
}

TEST_CASE("sectional curvature") {
  SUBCASE("unit sphere planes are 1") {
    const auto m = round_sphere(3, 1.0);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n01;
    for (int s = 0; s < 20; ++s) {
      const Point p = m.chart().from_unit(shifted_halton(3, s, 2));
      Eigen::VectorXd x(3), y(3);
      for (int i = 0; i < 3; ++i) x[i] = n01(rng), y[i] = n01(rng);
      CHECK(sectional_curvature(m, {p, x, y}) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("mixed plane of S2 x S3 is flat") {
    const auto m = product_field("s2xs3", {round_sphere(2, 1.0), round_sphere(3, 1.0)});
    Eigen::VectorXd x = Eigen::VectorXd::Zero(5), y = Eigen::VectorXd::Zero(5);
    x[0] = 1.0;
    y[3] = 1.0;
    CHECK(std::abs(sectional_curvature(m, {pt({1.0, 2.0, 1.2, 0.7, 3.0}), x, y})) < 1e-12);
  }
  SUBCASE("Gauss curvature -f''/f of a sine disk at pi/4") {
    const auto m = diagonal_surface("disk", 0.0, pi / 2, sine);
    Eigen::VectorXd x(2), y(2);
    x << 1, 0;
    y << 0, 1;
    CHECK(sectional_curvature(m, {pt({pi / 4, 0.0}), x, y}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("basis independence under random GL(2)") {
    const auto m = skew_metric();
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n01;
    for (int s = 0; s < 100; ++s) {
      const Point p = m.chart().from_unit(shifted_halton(3, s, 4));
      Eigen::VectorXd x(3), y(3);
      for (int i = 0; i < 3; ++i) x[i] = n01(rng), y[i] = n01(rng);
      double a = n01(rng), b = n01(rng), c = n01(rng), d = n01(rng);
      if (std::abs(a * d - b * c) < 0.1) continue;
      const double k0 = sectional_curvature(m, {p, x, y});
      const double k1 = sectional_curvature(m, {p, a * x + b * y, c * x + d * y});
      CHECK(std::abs(k0 - k1) < 1e-8);
    }
  }
  SUBCASE("degenerate plane") {
    const auto m = round_sphere(2, 1.0);
    Eigen::VectorXd x(2);
    x << 1, 1;
    try {
      sectional_curvature(m, {pt({1.0, 1.0}), x, 2.0 * x});
      FAIL("expected degenerate_plane");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::degenerate_plane);
    }
  }
}

TEST_CASE("chart admissibility") {
  const auto m = round_sphere(2, 1.0);
  try {
    m.g(pt({0.0, 1.0}));
    FAIL("pole should be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::point_outside_domain);
  }
  CHECK_THROWS_AS(Chart("bad", {{0.0, 1.0}}, {false}, 0.6), Error);
  // periodic axes wrap
  CHECK(m.chart().wrap(pt({1.0, 2 * pi + 0.5}))[1] == doctest::Approx(0.5));
}

TEST_CASE("non-invertible metric") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
  g(1, 1) = 1e-14;
  try {
    checked_inverse(g);
    FAIL("expected metric_not_invertible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::metric_not_invertible);
  }
}

TEST_CASE("curvature scan") {
  SUBCASE("unit S3") {
    const auto r = curvature_scan(round_sphere(3, 1.0), {1000, 5, 1, 1e-7});
    CHECK(std::abs(r.min_k - 1.0) < 1e-8);
    CHECK(std::abs(r.max_k - 1.0) < 1e-8);
    CHECK(r.verdict() == "nonnegative");
  }
  SUBCASE("S2 x S3 reaches 0 and 1") {
    const auto m = product_field("s2xs3", {round_sphere(2, 1.0), round_sphere(3, 1.0)});
    const auto r = curvature_scan(m, {1000, 5, 1, 1e-7});
    CHECK(std::abs(r.min_k) < 1e-8);
    CHECK(std::abs(r.max_k - 1.0) < 1e-8);
    CHECK(r.nonnegative());
  }
  SUBCASE("hyperbolic chart fails") {
    const auto m = diagonal_surface("h2", 0.0, 2.0, sinh_f);
    const auto r = curvature_scan(m, {1000, 5, 1, 1e-7});
    CHECK(r.min_k <= -1.0 + 1e-6);
    CHECK(r.verdict() == "negative");
  }
  SUBCASE("deterministic in the seed") {
    const auto m = skew_metric();
    const auto a = curvature_scan(m, {200, 3, 42, 1e-7});
    const auto b = curvature_scan(m, {200, 3, 42, 1e-7});
    CHECK(csv_row(a) == csv_row(b));
    CHECK(to_json(a) == to_json(b));
  }
  SUBCASE("too many skipped samples") {
    // Metric that degenerates on half the box.
    Chart chart("half", {{-1.0, 1.0}, {-1.0, 1.0}}, {false, false});
    MetricField m("half", chart, [](const Point& p) {
      Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
      if (p[0] > 0) g(1, 1) = 0.0;
      return g;
    });
    try {
      curvature_scan(m, {100, 2, 1, 1e-7});
      FAIL("expected too_many_skipped");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::too_many_skipped);
    }
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(curvature_scan(round_sphere(2, 1.0), {0, 5, 1, 1e-7}), Error);
  }
}

TEST_CASE("csv row format") {
  const auto r = curvature_scan(round_sphere(2, 1.0), {50, 2, 3, 1e-7});
  CHECK(csv_header_scan() == "metric-id,n_points,n_planes,seed,minK,maxK,verdict");
  CHECK(csv_row(r).rfind("S2,50,2,3,", 0) == 0);
}
