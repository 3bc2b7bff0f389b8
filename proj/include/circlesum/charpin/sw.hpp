#pragma once

#include "circlesum/charpin/mod2poly.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace circlesum {

/// w(RP^n) = (1 + a)^(n+1), truncated at degree n.
Mod2Poly total_sw_rp(int n);

struct SWReport {
  int n = 0;
  std::vector<int> w;  // w[0] = w_1, ..., w[n-1] = w_n
  bool spin = false;
  bool pin_plus = false;
  bool pin_minus = false;
  std::optional<int> structure_count;

  int w_at(int i) const { return i >= 1 && i <= static_cast<int>(w.size()) ? w[i - 1] : 0; }
};

/// Obstructions: pin+ iff w2 = 0, pin- iff w2 + w1^2 = 0, spin iff w1 = w2 = 0.
/// Structures form an H^1(RP^n; Z/2) = Z/2 torsor, hence two when one exists.
SWReport pin_verdicts(int n);

/// Top Stiefel-Whitney number <w_n, [RP^n]>.
int sw_number_top(int n);

nlohmann::json to_json(const SWReport& r);
/// Columns n,w1,w2,w3,w4,spin,pin_plus,pin_minus,count for n in [lo, hi].
std::string obstruction_table_csv(int lo, int hi);

}  // namespace circlesum
