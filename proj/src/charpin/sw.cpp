#include "circlesum/charpin/sw.hpp"

#include "circlesum/error.hpp"

namespace circlesum {

Mod2Poly total_sw_rp(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "RP^n needs n >= 1");
  return Mod2Poly::one_plus_a(n).pow(n + 1);
}

SWReport pin_verdicts(int n) {
  const Mod2Poly w = total_sw_rp(n);
  SWReport r;
  r.n = n;
  for (int i = 1; i <= n; ++i) r.w.push_back(w.coeff(i));
  // w_1^2 is w_1^2 a^2, and a^2 = 0 only when n = 1.
  const int w1 = w.coeff(1), w2 = w.coeff(2);
  const int w1_sq = n >= 2 ? w1 : 0;
  r.pin_plus = w2 == 0;
  r.pin_minus = ((w2 + w1_sq) & 1) == 0;
  r.spin = w1 == 0 && w2 == 0;
  if (r.pin_plus || r.pin_minus) r.structure_count = 2;
  return r;
}

int sw_number_top(int n) { return total_sw_rp(n).coeff(n); }

nlohmann::json to_json(const SWReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"w", r.w},
                   {"spin", r.spin},
                   {"pin_plus", r.pin_plus},
                   {"pin_minus", r.pin_minus}};
  j["structure_count"] = r.structure_count ? nlohmann::json(*r.structure_count) : nlohmann::json();
  return j;
}

std::string obstruction_table_csv(int lo, int hi) {
  if (lo < 1 || hi < lo) throw Error(ErrorKind::invalid_argument, "bad dimension range");
  std::string s = "n,w1,w2,w3,w4,spin,pin_plus,pin_minus,count\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  for (int n = lo; n <= hi; ++n) {
    const SWReport r = pin_verdicts(n);
    s += std::to_string(n);
    for (int i = 1; i <= 4; ++i) s += "," + std::to_string(r.w_at(i));
    s += std::string(",") + yn(r.spin) + "," + yn(r.pin_plus) + "," + yn(r.pin_minus) + ",";
    s += r.structure_count ? std::to_string(*r.structure_count) : "none";
    s += "\n";
  }
  return s;
}

}  // namespace circlesum
