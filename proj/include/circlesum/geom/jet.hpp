#pragma once

// Second-order forward-mode jets: a value together with its gradient and
// Hessian with respect to up to kMaxJetDim independent coordinates.
//
// Metric builders are written once as templates over the scalar type; with
// S = double they evaluate g, with S = Jet they yield g together with its
// first and second coordinate partials exactly (to rounding).

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace circlesum {

inline constexpr int kMaxJetDim = 12;

class Jet {
 public:
  Jet() = default;
  Jet(double value, int dim) : v_(value), n_(dim) {}  // NOLINT: constant jet

  static Jet variable(double value, int dim, int index) {
    Jet j(value, dim);
    j.g_[index] = 1.0;
    return j;
  }

  double value() const { return v_; }
  double grad(int i) const { return g_[i]; }
  double hess(int i, int j) const { return h_[i * kMaxJetDim + j]; }
  int dim() const { return n_; }

  // Chain rule for a scalar function with known value and two derivatives.
  Jet apply(double f0, double f1, double f2) const {
    Jet r(f0, n_);
    for (int i = 0; i < n_; ++i) r.g_[i] = f1 * g_[i];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        r.h_[i * kMaxJetDim + j] = f1 * h_[i * kMaxJetDim + j] + f2 * g_[i] * g_[j];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    const int n = common(o);
    v_ += o.v_;
    for (int i = 0; i < n; ++i) g_[i] += o.g_[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h_[i * kMaxJetDim + j] += o.h_[i * kMaxJetDim + j];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    const int n = common(o);
    v_ -= o.v_;
    for (int i = 0; i < n; ++i) g_[i] -= o.g_[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h_[i * kMaxJetDim + j] -= o.h_[i * kMaxJetDim + j];
    return *this;
  }
  Jet& operator*=(double s) {
    v_ *= s;
    for (int i = 0; i < n_; ++i) g_[i] *= s;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) h_[i * kMaxJetDim + j] *= s;
    return *this;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = a.n_ > b.n_ ? a.n_ : b.n_;
    Jet r(a.v_ * b.v_, n);
    for (int i = 0; i < n; ++i) r.g_[i] = a.v_ * b.g_[i] + b.v_ * a.g_[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int k = i * kMaxJetDim + j;
        r.h_[k] = a.v_ * b.h_[k] + b.v_ * a.h_[k] + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
      }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    const double inv = 1.0 / b.v_;
    return a * b.apply(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator/(double s, const Jet& a) {
    const double inv = 1.0 / a.v_;
    return a.apply(s * inv, -s * inv * inv, 2.0 * s * inv * inv * inv);
  }
  friend Jet operator+(Jet a, double s) { a.v_ += s; return a; }
  friend Jet operator+(double s, Jet a) { a.v_ += s; return a; }
  friend Jet operator-(Jet a, double s) { a.v_ -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }

 private:
  int common(const Jet& o) {
    if (o.n_ > n_) n_ = o.n_;
    return n_;
  }

  double v_ = 0.0;
  int n_ = 0;
  std::array<double, kMaxJetDim> g_{};
  std::array<double, kMaxJetDim * kMaxJetDim> h_{};
};

inline Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.apply(s, c, -s);
}
inline Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.apply(c, -s, -c);
}
inline Jet sqrt(const Jet& x) {
  const double r = std::sqrt(x.value());
  return x.apply(r, 0.5 / r, -0.25 / (r * x.value()));
}

// Scalar helpers so builder templates read the same for double and Jet.
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

template <class S>
S constant_like(double c, const S& like) {
  if constexpr (std::is_same_v<S, double>) {
    (void)like;
    return c;
  } else {
    return S(c, like.dim());
  }
}

}  // namespace circlesum
