#include "circlesum/builders/profile.hpp"

#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace circlesum {
namespace {

using std::numbers::pi;

// Smooth step, 0 for x <= 0 and 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double bump(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

double bump_mass() {
  static const double mass =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(bump, 0.0, 1.0, 15, 1e-13);
  return mass;
}

// Unit-radius torpedo (r = 1); radius r is obtained by f_r(t) = r f(t/r).
class UnitTorpedo {
 public:
  static constexpr double kBlendStart = 0.6;
  static constexpr double kStepEnd = 0.75;
  static constexpr double kCollarStart = 0.9;
  static constexpr int kPanels = 512;

  explicit UnitTorpedo(double t_max) { configure(t_max); }

  double t_max() const { return t_max_; }
  double a() const { return a_; }
  double c1() const { return c1_; }
  double plateau() const { return plateau_; }

  double d2(double t) const {
    if (t <= a_) return -std::sin(t);
    if (t >= c1_) return 0.0;
    return -(1.0 - smooth_step((t - a_) / (bs_ - a_))) * std::sin(t) -
           mu_ * bump((t - a_) / (c1_ - a_)) / (bump_mass() * (c1_ - a_));
  }

  // (f, f') at t.
  std::array<double, 2> f01(double t) const {
    if (t <= a_) return {std::sin(t), std::cos(t)};
    if (t >= c1_) return {plateau_, 0.0};
    const double h = (c1_ - a_) / kPanels;
    const int k = std::min(kPanels - 1, static_cast<int>((t - a_) / h));
    const double node = a_ + k * h;
    auto [f0, f1] = nodes_[k];
    using Gauss = boost::math::quadrature::gauss<double, 20>;
    const double i1 = Gauss::integrate([&](double s) { return d2(s); }, node, t);
    const double i2 = Gauss::integrate([&](double s) { return (t - s) * d2(s); }, node, t);
    return {f0 + f1 * (t - node) + i2, f1 + i1};
  }

 private:
  void configure(double t_max) {
    t_max_ = t_max;
    a_ = kBlendStart * t_max;
    bs_ = kStepEnd * t_max;
    c1_ = kCollarStart * t_max;
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    mu_ = 0.0;
    const double faded = GK::integrate(
        [&](double s) { return (1.0 - smooth_step((s - a_) / (bs_ - a_))) * std::sin(s); }, a_,
        bs_, 15, 1e-13);
    mu_ = std::cos(a_) - faded;
    if (mu_ < 0.0) throw Error(ErrorKind::blend_failed_concavity, "negative bump weight");

    const double h = (c1_ - a_) / kPanels;
    nodes_.resize(kPanels + 1);
    nodes_[0] = {std::sin(a_), std::cos(a_)};
    using Gauss = boost::math::quadrature::gauss<double, 20>;
    for (int k = 0; k < kPanels; ++k) {
      const double lo = a_ + k * h, hi = lo + h;
      const double i1 = Gauss::integrate([&](double s) { return d2(s); }, lo, hi);
      const double i2 = Gauss::integrate([&](double s) { return (hi - s) * d2(s); }, lo, hi);
      nodes_[k + 1] = {nodes_[k][0] + nodes_[k][1] * h + i2, nodes_[k][1] + i1};
    }
    plateau_ = nodes_[kPanels][0];
    end_slope_ = nodes_[kPanels][1];
  }

  double t_max_ = 0.0, a_ = 0.0, bs_ = 0.0, c1_ = 0.0, mu_ = 0.0;
  double plateau_ = 0.0, end_slope_ = 0.0;
  std::vector<std::array<double, 2>> nodes_;
};

const UnitTorpedo& unit_torpedo() {
  static const UnitTorpedo solved = [] {
    auto residual = [](double t_max) { return UnitTorpedo(t_max).plateau() - 1.0; };
    std::uintmax_t iters = 100;
    auto [lo, hi] = boost::math::tools::toms748_solve(
        residual, 1.8, 2.0, boost::math::tools::eps_tolerance<double>(50), iters);
    const double t_max = residual(lo) == 0.0 ? lo : 0.5 * (lo + hi);
    return UnitTorpedo(t_max);
  }();
  return solved;
}

}  // namespace

std::string to_string(ProfileKind kind) {
  return kind == ProfileKind::hemisphere ? "hemisphere" : "collar_torpedo";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "hemisphere") return ProfileKind::hemisphere;
  if (s == "collar_torpedo" || s == "torpedo") return ProfileKind::collar_torpedo;
  throw Error(ErrorKind::invalid_argument, "unknown profile kind '" + s + "'");
}

double WarpProfile::blend_start() const {
  return kind_ == ProfileKind::hemisphere ? t_max_ : UnitTorpedo::kBlendStart * t_max_;
}

double WarpProfile::collar_start() const {
  return kind_ == ProfileKind::hemisphere ? t_max_ : UnitTorpedo::kCollarStart * t_max_;
}

// Derivatives of the unit-radius profile in the unit variable s = t/r.
double WarpProfile::unit_derivative(int n, double s) const {
  auto sine_derivative = [](int order, double x) {
    switch (order % 4) {
      case 0: return std::sin(x);
      case 1: return std::cos(x);
      case 2: return -std::sin(x);
      default: return -std::cos(x);
    }
  };
  if (kind_ == ProfileKind::hemisphere) return sine_derivative(n, s);

  const UnitTorpedo& u = unit_torpedo();
  if (s <= u.a()) return sine_derivative(n, s);
  if (s >= u.c1()) return n == 0 ? u.plateau() : 0.0;
  if (n <= 1) return u.f01(s)[n];
  if (n == 2) return u.d2(s);
  // Blend window only: central differences of f''.
  const double h = 1e-3;
  auto d2 = [&](double x) { return u.d2(x); };
  switch (n) {
    case 3: return (d2(s + h) - d2(s - h)) / (2 * h);
    case 4: return (d2(s + h) - 2 * d2(s) + d2(s - h)) / (h * h);
    case 5: return (d2(s + 2 * h) - 2 * d2(s + h) + 2 * d2(s - h) - d2(s - 2 * h)) / (2 * h * h * h);
    default:
      throw Error(ErrorKind::invalid_argument, "blend derivatives above order 5 are not available");
  }
}

double WarpProfile::derivative(int n, double t) const {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "negative derivative order");
  // f_r(t) = r F(t/r)  =>  f_r^(n)(t) = r^(1-n) F^(n)(t/r)
  return std::pow(r_, 1 - n) * unit_derivative(n, t / r_);
}

WarpProfile make_profile(ProfileKind kind, double r, int jet_order) {
  if (!(r > 0.0)) throw Error(ErrorKind::invalid_argument, "profile radius must be positive");
  if (jet_order < 0 || jet_order > 7)
    throw Error(ErrorKind::invalid_argument, "jet order must lie in [0, 7]");
  WarpProfile p;
  p.kind_ = kind;
  p.r_ = r;
  p.jet_order_ = jet_order;
  p.t_max_ = kind == ProfileKind::hemisphere ? r * std::numbers::pi / 2.0
                                             : r * unit_torpedo().t_max();

  if (std::abs(p.f(0.0)) > 1e-12 || std::abs(p.df(0.0) - 1.0) > 1e-12)
    throw Error(ErrorKind::invalid_argument, "profile violates f(0) = 0, f'(0) = 1");
  constexpr int kSamples = 2000;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = p.t_max_ * i / kSamples;
    if (!(p.f(t) > 0.0)) throw Error(ErrorKind::invalid_argument, "profile not positive");
    if (p.d2f(t) > 1e-10)
      throw Error(ErrorKind::blend_failed_concavity, "f'' = " + format_double(p.d2f(t)) +
                                                         " at t = " + format_double(t));
  }
  for (int n = 1; n <= jet_order; n += 2)
    if (std::abs(p.derivative(n, p.t_max_)) > 1e-6)
      throw Error(ErrorKind::invalid_argument,
                  "odd derivative of order " + std::to_string(n) + " does not vanish at t_max");
  return p;
}

std::vector<ProfileRow> profile_table(const WarpProfile& p, int n_rows) {
  std::vector<ProfileRow> rows;
  for (int i = 0; i < n_rows; ++i) {
    const double t = n_rows == 1 ? 0.0 : p.t_max() * i / (n_rows - 1);
    rows.push_back({t, p.f(t), p.df(t), p.d2f(t)});
  }
  return rows;
}

std::string profile_csv(const WarpProfile& p, int n_rows) {
  std::string out = "t,f,df,d2f\n";
  for (const auto& row : profile_table(p, n_rows))
    out += format_double(row.t) + "," + format_double(row.f) + "," + format_double(row.df) + "," +
           format_double(row.d2f) + "\n";
  return out;
}

}  // namespace circlesum
