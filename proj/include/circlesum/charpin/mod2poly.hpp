#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace circlesum {

/// Truncated polynomial ring Z/2[a]/(a^(n+1)), i.e. H*(RP^n; Z/2).
class Mod2Poly {
 public:
  explicit Mod2Poly(int degree);
  static Mod2Poly one(int degree);
  /// 1 + a
  static Mod2Poly one_plus_a(int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : 0; }
  void set(int k, int v);

  Mod2Poly operator+(const Mod2Poly& o) const;
  Mod2Poly operator*(const Mod2Poly& o) const;
  Mod2Poly pow(int e) const;
  bool operator==(const Mod2Poly& o) const = default;

  /// "1 + a + a^2"
  std::string to_string() const;

 private:
  std::vector<std::uint8_t> c_;
};

}  // namespace circlesum
