#include "circlesum/builders/action.hpp"
#include "circlesum/builders/glued.hpp"
#include "circlesum/builders/loop.hpp"
#include "circlesum/builders/product.hpp"
#include "circlesum/builders/profile.hpp"
#include "circlesum/builders/quotient.hpp"
#include "circlesum/builders/sphere.hpp"
#include "circlesum/error.hpp"
#include "circlesum/geom/curvature.hpp"
#include "circlesum/geom/scan.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace circlesum;
using std::numbers::pi;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no circlesum::Error thrown");
  return ErrorKind::invalid_argument;
}

ProductMetric disk_times_sphere(ProfileKind kind, int m, double r = 1.0) {
  return ProductMetric({Factor::warped_disk(make_profile(kind, r)), Factor::round(m)});
}

QuotientMetric block(ProfileKind kind, int m) {
  ProductMetric cover = disk_times_sphere(kind, m);
  IsometricAction t = half_turn_antipodal(cover);
  return quotient(std::move(cover), std::move(t));
}

// Unit quaternion (w, x, y, z) of a rotation matrix, Shepperd's method.
Eigen::Vector4d quaternion_of(const Eigen::Matrix3d& r) {
  Eigen::Vector4d q;
  const double tr = r.trace();
  if (tr > 0) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s;
  }
  return q.normalized();
}

// Lifts the loop continuously to S^3 and reports whether the lift fails to
// close up, i.e. the class in pi_1(SO(3)).
int lift_class(const RotationLoop& loop) {
  const int steps = 4000;
  Eigen::Vector4d prev = quaternion_of(loop.at(0.0));
  const Eigen::Vector4d start = prev;
  for (int i = 1; i <= steps; ++i) {
    Eigen::Vector4d q = quaternion_of(loop.at(2 * pi * i / steps));
    if (q.dot(prev) < 0) q = -q;
    prev = q;
  }
  return prev.dot(start) > 0 ? 0 : 1;
}

RotationLoop random_loop(std::mt19937_64& rng) {
  static const int planes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::uniform_int_distribution<int> count(0, 4), plane(0, 2), mult(-3, 3);
  std::vector<LoopTerm> terms;
  for (int k = count(rng); k > 0; --k) {
    const int p = plane(rng);
    terms.push_back({planes[p][0], planes[p][1], mult(rng)});
  }
  return RotationLoop(3, terms);
}

}  // namespace

TEST_CASE("warp profiles") {
  SUBCASE("hemisphere r = 1") {
    const auto p = make_profile(ProfileKind::hemisphere, 1.0);
    CHECK(p.f(pi / 4) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(std::abs(p.df(pi / 2)) < 1e-14);
    CHECK(std::abs(p.derivative(3, pi / 2)) < 1e-14);
    CHECK(p.t_max() == doctest::Approx(pi / 2));
  }
  SUBCASE("hemisphere r = 2 has Gauss curvature 1/4") {
    const auto p = make_profile(ProfileKind::hemisphere, 2.0);
    for (int i = 1; i < 50; ++i) {
      const double t = p.t_max() * i / 50;
      CHECK(-p.d2f(t) / p.f(t) == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
  SUBCASE("collar torpedo is constant on its collar") {
    const auto p = make_profile(ProfileKind::collar_torpedo, 1.0);
    CHECK(p.blend_start() < p.collar_start());
    CHECK(p.collar_start() < p.t_max());
    for (int i = 0; i <= 40; ++i) {
      const double t = p.collar_start() + (p.t_max() - p.collar_start()) * i / 40;
      CHECK(std::abs(p.f(t) - 1.0) <= 1e-9);
      for (int n = 1; n <= 5; ++n) CHECK(std::abs(p.derivative(n, t)) <= 1e-9);
    }
  }
  SUBCASE("-f''/f >= 0, f(0) = 0, f'(0) = 1, f' continuous") {
    for (auto kind : {ProfileKind::hemisphere, ProfileKind::collar_torpedo})
      for (double r : {0.5, 1.0, 3.0}) {
        const auto p = make_profile(kind, r);
        CHECK(std::abs(p.f(0.0)) < 1e-12);
        CHECK(std::abs(p.df(0.0) - 1.0) < 1e-12);
        double prev = p.df(0.0);
        for (int i = 1; i <= 2000; ++i) {
          const double t = p.t_max() * i / 2000;
          CHECK(-p.d2f(t) / p.f(t) >= -1e-9);
          CHECK(p.df(t) <= prev + 1e-12);  // concave
          CHECK(std::abs(p.df(t) - prev) < 0.01);
          prev = p.df(t);
        }
      }
  }
  SUBCASE("f' is the integral of f''") {
    const auto p = make_profile(ProfileKind::collar_torpedo, 1.0);
    const int n = 20000;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = p.t_max() * i / n, b = p.t_max() * (i + 1) / n;
      integral += 0.5 * (b - a) * (p.d2f(a) + p.d2f(b));
    }
    CHECK(std::abs(1.0 + integral - p.df(p.t_max())) < 1e-6);
  }
  SUBCASE("invalid arguments") {
    CHECK(kind_of([] { make_profile(ProfileKind::hemisphere, 0.0); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { make_profile(ProfileKind::hemisphere, 1.0, 9); }) ==
          ErrorKind::invalid_argument);
    CHECK(kind_of([] { profile_kind_from_string("cigar"); }) == ErrorKind::invalid_argument);
  }
}

TEST_CASE("isometry checks") {
  SUBCASE("antipodal map on round spheres") {
    for (int n : {2, 3, 4}) {
      ProductMetric s({Factor::round(n)});
      const auto v = verify_isometry(s.realized(),
                                     linear_chart_map(s, ambient::antipodal(n + 1), "A"), 200, 1e-10);
      CHECK(v.pass);
    }
  }
  SUBCASE("(r, A) on S2 x S3") {
    ProductMetric s({Factor::round(2), Factor::round(3)});
    const auto t = half_turn_antipodal(s);
    const auto v = verify_isometry(s.realized(), linear_chart_map(s, t.generators[0], t.label), 200,
                                   1e-10);
    CHECK(v.pass);
  }
  SUBCASE("scaling a flat chart is not an isometry") {
    Chart chart("flat", {{-1.0, 1.0}, {-1.0, 1.0}}, {false, false});
    MetricField m("flat", chart, [](const Point&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)); });
    SmoothMap scale{"2p", [](const Point& p) { return Point(0.4 * p); },
                    [](const Point&) { return Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(2, 2)); }};
    const auto v = verify_isometry(m, scale, 50, 1e-10);
    CHECK_FALSE(v.pass);
    // |4I - I|_F = 3 |I|_F
    CHECK(v.defect == doctest::Approx(3.0 * std::sqrt(2.0)));
  }
  SUBCASE("map leaving the chart") {
    Chart chart("flat", {{-1.0, 1.0}}, {false});
    MetricField m("flat", chart, [](const Point&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(1, 1)); });
    SmoothMap shift{"shift", [](const Point& p) { return Point(p.array() + 5.0); },
                    [](const Point&) { return Eigen::MatrixXd(Eigen::MatrixXd::Identity(1, 1)); }};
    CHECK(kind_of([&] { verify_isometry(m, shift, 10, 1e-10); }) == ErrorKind::map_leaves_domain);
  }
}

TEST_CASE("freeness") {
  SUBCASE("antipodal map moves every point by 2") {
    ProductMetric s({Factor::round(3)});
    const auto v = verify_free(s, {"A", 2, {ambient::antipodal(4)}}, 300);
    CHECK(v.pass);
    CHECK(v.defect == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("(r, A) on S2 x S3") {
    ProductMetric s({Factor::round(2), Factor::round(3)});
    CHECK(verify_free(s, half_turn_antipodal(s), 300).pass);
  }
  SUBCASE("a reflection of S2 fixes a circle") {
    ProductMetric s({Factor::round(2)});
    Eigen::MatrixXd r = ambient::identity(3);
    r(0, 0) = -1.0;
    const auto v = verify_free(s, {"r", 2, {r}}, 300);
    CHECK_FALSE(v.pass);
  }
  SUBCASE("the half-turn alone fixes the poles") {
    ProductMetric s({Factor::round(2)});
    const auto v = verify_free(s, {"r", 2, {ambient::half_turn(3)}}, 300);
    CHECK_FALSE(v.pass);
    CHECK(v.defect < 1e-9);
  }
}

TEST_CASE("quotients") {
  SUBCASE("RP^n has constant curvature 1 and half the volume") {
    ProductMetric s({Factor::round(3)});
    const auto q = quotient(std::move(s), {"A", 2, {ambient::antipodal(4)}});
    const auto r = curvature_scan(q.metric(), {300, 3, 1, 1e-7});
    CHECK(std::abs(r.min_k - 1.0) < 1e-8);
    CHECK(std::abs(r.max_k - 1.0) < 1e-8);
    CHECK(q.volume() == doctest::Approx(pi * pi).epsilon(1e-12));
  }
  SUBCASE("(S2 x S3)/(r, A) has min K = 0") {
    ProductMetric s({Factor::round(2), Factor::round(3)});
    auto t = half_turn_antipodal(s);
    const auto q = quotient(std::move(s), std::move(t));
    const auto r = curvature_scan(q.metric(), {1000, 5, 1, 1e-7});
    CHECK(std::abs(r.min_k) < 1e-8);
    CHECK(r.nonnegative());
    CHECK(q.isometry().pass);
    CHECK(q.freeness().pass);
  }
  SUBCASE("quotient scan equals cover scan") {
    for (auto kind : {ProfileKind::hemisphere, ProfileKind::collar_torpedo}) {
      const auto q = block(kind, 3);
      const ScanOptions opts{300, 3, 5, 1e-7};
      const auto a = curvature_scan(q.metric(), opts);
      const auto b = curvature_scan(q.cover().realized(), opts);
      CHECK(std::abs(a.min_k - b.min_k) < 1e-10);
      CHECK(std::abs(a.max_k - b.max_k) < 1e-10);
    }
  }
  SUBCASE("errors") {
    CHECK(kind_of([] {
            ProductMetric s({Factor::round(2)});
            Eigen::MatrixXd r = ambient::identity(3);
            r(0, 0) = -1.0;
            quotient(std::move(s), {"r", 2, {r}});
          }) == ErrorKind::action_not_free);
    CHECK(kind_of([] {
            ProductMetric s({Factor::round(2)});
            quotient(std::move(s), {"2A", 2, {2.0 * ambient::antipodal(3)}});
          }) == ErrorKind::action_not_isometric);
  }
}

TEST_CASE("volumes") {
  CHECK(ProductMetric({Factor::round(3)}).volume() == doctest::Approx(2 * pi * pi).epsilon(1e-12));
  ProductMetric disk({Factor::warped_disk(make_profile(ProfileKind::hemisphere, 1.0))});
  CHECK(disk.volume() == doctest::Approx(2 * pi).epsilon(1e-10));
  ProductMetric s3({Factor::round(3)});
  const auto q = quotient(std::move(s3), {"A", 2, {ambient::antipodal(4)}});
  CHECK(q.volume() == doctest::Approx(pi * pi).epsilon(1e-12));

  SUBCASE("closed form agrees with Monte Carlo") {
    for (auto kind : {ProfileKind::hemisphere, ProfileKind::collar_torpedo}) {
      ProductMetric m = disk_times_sphere(kind, 2);
      const double mc = monte_carlo_volume(m.realized(), 20000, 3);
      CHECK(std::abs(mc - m.volume()) < 0.01 * m.volume());
    }
  }
  SUBCASE("raw metrics need Monte Carlo") {
    ProductMetric m({Factor::raw(round_sphere(2, 1.0))});
    CHECK(kind_of([&] { (void)m.volume(); }) == ErrorKind::raw_metric_needs_monte_carlo);
  }
}

TEST_CASE("mixed planes in disk x sphere products are flat") {
  for (auto kind : {ProfileKind::hemisphere, ProfileKind::collar_torpedo}) {
    const auto m = disk_times_sphere(kind, 3).realized();
    for (int s = 0; s < 50; ++s) {
      const Point p = m.chart().from_unit(shifted_halton(m.dim(), s, 2));
      const auto r = riemann(m, p);
      const auto g = m.g(p);
      for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 5; ++j) {
          Eigen::VectorXd x = Eigen::VectorXd::Zero(5), y = Eigen::VectorXd::Zero(5);
          x[i] = 1.0;
          y[j] = 1.0;
          CHECK(std::abs(sectional_curvature(r, g, x, y)) <= 1e-8);
        }
    }
  }
}

TEST_CASE("boundary form") {
  SUBCASE("collar torpedo block is a product on its collar") {
    const auto q = block(ProfileKind::collar_torpedo, 3);
    const auto& p = q.cover().factors()[0].profile();
    const auto r = boundary_form_check(q, p.t_max() - p.collar_start(), 1e-9);
    CHECK(r.mode == "product");
    CHECK(r.product_pass);
    CHECK(r.pass);
  }
  SUBCASE("hemisphere block passes only at jet level") {
    const auto q = block(ProfileKind::hemisphere, 3);
    const auto r = boundary_form_check(q, 0.1 * q.cover().factors()[0].profile().t_max(), 1e-6);
    CHECK(r.mode == "jet");
    CHECK_FALSE(r.product_pass);
    CHECK(r.jet_pass);
    CHECK(r.second_jet > 0.5);
    CHECK(r.pass);
  }
  SUBCASE("collar depth reaching into the blend fails") {
    const auto q = block(ProfileKind::collar_torpedo, 3);
    const auto& p = q.cover().factors()[0].profile();
    const auto r = boundary_form_check(q, p.t_max() - 0.9 * p.blend_start(), 1e-9);
    CHECK_FALSE(r.product_pass);
    CHECK_FALSE(r.pass);
  }
  SUBCASE("a block without a disk factor") {
    ProductMetric s({Factor::round(2), Factor::round(3)});
    auto t = half_turn_antipodal(s);
    const auto q = quotient(std::move(s), std::move(t));
    CHECK(kind_of([&] { boundary_form_check(q, 0.1, 1e-9); }) == ErrorKind::no_disk_factor);
  }
}

TEST_CASE("loop classes") {
  CHECK(loop_class(RotationLoop::identity(3)) == 0);
  CHECK(loop_class(RotationLoop::block_rotation(3, 0, 1)) == 1);
  CHECK(loop_class(RotationLoop::block_rotation(3, 0, 1, 2)) == 0);
  CHECK(lift_class(RotationLoop::identity(3)) == 0);
  CHECK(lift_class(RotationLoop::block_rotation(3, 0, 1)) == 1);
  CHECK(lift_class(RotationLoop::block_rotation(3, 0, 1, 2)) == 0);
  CHECK(RotationLoop::identity(4).is_identity());

  SUBCASE("at() lands in SO(n) and derivative() matches finite differences") {
    const RotationLoop l(5, {{0, 1, 1}, {2, 4, -2}, {1, 3, 3}});
    for (double a : {0.0, 0.7, 2.9}) {
      const Eigen::MatrixXd m = l.at(a);
      CHECK((m.transpose() * m - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-12);
      CHECK(m.determinant() == doctest::Approx(1.0));
      const Eigen::MatrixXd fd = (l.at(a + 1e-6) - l.at(a - 1e-6)) / 2e-6;
      CHECK((fd - l.derivative(a)).norm() < 1e-7);
    }
  }
  SUBCASE("additive under concatenation, agreeing with the lift oracle") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
      const auto a = random_loop(rng), b = random_loop(rng);
      CHECK(loop_class(a) == lift_class(a));
      CHECK(loop_class(a.then(b)) == (loop_class(a) + loop_class(b)) % 2);
      CHECK(lift_class(a.then(b)) == (lift_class(a) + lift_class(b)) % 2);
    }
  }
}

TEST_CASE("gluing isometry") {
  const auto make = [](const RotationLoop& loop) {
    return GluedSpace("test", block(ProfileKind::collar_torpedo, 3),
                      block(ProfileKind::collar_torpedo, 3), loop,
                      0.05);
  };
  SUBCASE("identity") {
    const auto r = gluing_isometry_check(make(RotationLoop::identity(4)), 500, 1e-10);
    CHECK(r.pass);
    CHECK(r.fiber_defect < 1e-10);
  }
  SUBCASE("essential block rotation") {
    const auto r = gluing_isometry_check(make(RotationLoop::block_rotation(4, 2, 3)), 1000, 1e-10);
    CHECK(r.pass);
    CHECK(r.descends_defect < 1e-10);
  }
  SUBCASE("any loop preserves the boundary metric") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> idx(0, 3), mult(-2, 2);
    for (int i = 0; i < 10; ++i) {
      int a = idx(rng), b = idx(rng);
      if (a == b) b = (a + 1) % 4;
      const auto r = gluing_isometry_check(
          make(RotationLoop(4, {{std::min(a, b), std::max(a, b), mult(rng)}})), 200, 1e-10);
      CHECK(r.fiber_defect < 1e-10);
    }
  }
  SUBCASE("non-orthogonal fiber map fails") {
    BoundaryMap scale{"(1 + theta/10) x",
                      [](double th) { return Eigen::MatrixXd((1.0 + th / 10) * Eigen::MatrixXd::Identity(4, 4)); },
                      [](double) { return Eigen::MatrixXd(0.1 * Eigen::MatrixXd::Identity(4, 4)); }};
    GluedSpace gs("scaled", block(ProfileKind::collar_torpedo, 3),
                  block(ProfileKind::collar_torpedo, 3), RotationLoop::identity(4), scale, 0.05);
    const auto r = gluing_isometry_check(gs, 200, 1e-10);
    CHECK_FALSE(r.pass);
    CHECK(r.fiber_defect > 1e-2);
    CHECK(kind_of([&] { glued_metric(gs); }) == ErrorKind::boundary_mismatch);
  }
}

TEST_CASE("glued metrics") {
  SUBCASE("two torpedo D2 x S2 blocks glued by a block rotation") {
    auto a = trivial_quotient(disk_times_sphere(ProfileKind::collar_torpedo, 2));
    auto b = trivial_quotient(disk_times_sphere(ProfileKind::collar_torpedo, 2));
    GluedSpace gs("bundle", std::move(a), std::move(b), RotationLoop::block_rotation(3, 1, 2), 0.1);
    const auto g = glued_metric(gs);
    const auto r = curvature_scan(g.field, {2000, 5, 1, 1e-7});
    CHECK(r.min_k >= -1e-7);
    for (double d : g.jet_defects) CHECK(d < 1e-6);
  }
  SUBCASE("doubled hemisphere is the round sphere") {
    ProductMetric da({Factor::warped_disk(make_profile(ProfileKind::hemisphere, 1.0))});
    ProductMetric db({Factor::warped_disk(make_profile(ProfileKind::hemisphere, 1.0))});
    GluedSpace gs("S2", trivial_quotient(std::move(da)), trivial_quotient(std::move(db)),
                  RotationLoop(), 0.1);
    const auto g = glued_metric(gs);
    const auto r = curvature_scan(g.field, {1000, 5, 1, 1e-7});
    CHECK(std::abs(r.min_k - 1.0) < 1e-6);
    CHECK(std::abs(r.max_k - 1.0) < 1e-6);
    CHECK(gs.volume() == doctest::Approx(4 * pi).epsilon(1e-10));
  }
  SUBCASE("mismatched radii") {
    auto a = trivial_quotient(disk_times_sphere(ProfileKind::collar_torpedo, 2, 1.0));
    auto b = trivial_quotient(disk_times_sphere(ProfileKind::collar_torpedo, 2, 2.0));
    GluedSpace gs("bad", std::move(a), std::move(b), RotationLoop::identity(3), 0.1);
    try {
      glued_metric(gs);
      FAIL("expected jet_mismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::jet_mismatch);
      CHECK(std::string(e.what()).find("order 0") != std::string::npos);
    }
  }
}
