#include "circlesum/charpin/mod2poly.hpp"

#include "circlesum/error.hpp"

#include <algorithm>

namespace circlesum {

Mod2Poly::Mod2Poly(int degree) {
  if (degree < 0) throw Error(ErrorKind::invalid_argument, "negative truncation degree");
  c_.assign(degree + 1, 0);
}

Mod2Poly Mod2Poly::one(int degree) {
  Mod2Poly p(degree);
  p.c_[0] = 1;
  return p;
}

Mod2Poly Mod2Poly::one_plus_a(int degree) {
  Mod2Poly p = one(degree);
  if (degree >= 1) p.c_[1] = 1;
  return p;
}

void Mod2Poly::set(int k, int v) {
  if (k < 0 || k > degree()) throw Error(ErrorKind::invalid_argument, "coefficient out of range");
  c_[k] = static_cast<std::uint8_t>(v & 1);
}

Mod2Poly Mod2Poly::operator+(const Mod2Poly& o) const {
  Mod2Poly r(std::min(degree(), o.degree()));
  for (int k = 0; k <= r.degree(); ++k) r.c_[k] = c_[k] ^ o.c_[k];
  return r;
}

Mod2Poly Mod2Poly::operator*(const Mod2Poly& o) const {
  Mod2Poly r(std::min(degree(), o.degree()));
  for (int i = 0; i <= r.degree(); ++i)
    if (c_[i])
      for (int j = 0; i + j <= r.degree(); ++j) r.c_[i + j] ^= o.c_[j];
  return r;
}

Mod2Poly Mod2Poly::pow(int e) const {
  if (e < 0) throw Error(ErrorKind::invalid_argument, "negative exponent");
  Mod2Poly r = one(degree()), b = *this;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

std::string Mod2Poly::to_string() const {
  std::string s;
  for (int k = 0; k <= degree(); ++k) {
    if (!c_[k]) continue;
    if (!s.empty()) s += " + ";
    s += k == 0 ? "1" : k == 1 ? "a" : "a^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace circlesum
