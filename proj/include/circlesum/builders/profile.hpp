#pragma once

#include <memory>
#include <string>
#include <vector>

namespace circlesum {

enum class ProfileKind { hemisphere, collar_torpedo };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& s);

/// Warping function f of a rotationally symmetric disk metric
/// dt^2 + f(t)^2 dtheta^2 on t in [0, t_max].
///
/// hemisphere:     f(t) = r sin(t/r), t_max = r pi/2.
/// collar_torpedo: f(t) = r sin(t/r) up to 0.6 t_max, then f'' is blended
///                 through smooth steps and bumps so that f' reaches 0 at
///                 0.9 t_max with f = r there; f is constant r on the collar
///                 [0.9 t_max, t_max]. t_max is solved so the plateau is r.
///
/// Both profiles are odd at 0, concave, have f'(0) = 1 and all odd
/// derivatives vanishing at t_max.
class WarpProfile {
 public:
  ProfileKind kind() const { return kind_; }
  double radius() const { return r_; }
  double t_max() const { return t_max_; }
  int jet_order() const { return jet_order_; }
  /// Start of the blend window (hemisphere: t_max).
  double blend_start() const;
  /// Start of the constant collar (hemisphere: t_max, a degenerate collar).
  double collar_start() const;

  double f(double t) const { return derivative(0, t); }
  double df(double t) const { return derivative(1, t); }
  double d2f(double t) const { return derivative(2, t); }
  /// n-th derivative; exact for n <= 2, exact in the sine and collar regions
  /// for every n, finite differences of f'' inside the blend window.
  double derivative(int n, double t) const;

  /// Builds the profile and certifies its invariants numerically.
  friend WarpProfile make_profile(ProfileKind kind, double r, int jet_order);

 private:
  WarpProfile() = default;
  double unit_derivative(int n, double s) const;

  ProfileKind kind_ = ProfileKind::hemisphere;
  double r_ = 1.0;
  double t_max_ = 0.0;
  int jet_order_ = 5;
};

inline constexpr int kDefaultJetOrder = 5;

WarpProfile make_profile(ProfileKind kind, double r, int jet_order = kDefaultJetOrder);

struct ProfileRow {
  double t, f, df, d2f;
};
std::vector<ProfileRow> profile_table(const WarpProfile& p, int n_rows);
std::string profile_csv(const WarpProfile& p, int n_rows);

}  // namespace circlesum
