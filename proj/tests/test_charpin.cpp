#include "circlesum/catalog/descriptor.hpp"
#include "circlesum/charpin/bordism.hpp"
#include "circlesum/charpin/brown.hpp"
#include "circlesum/charpin/mod2poly.hpp"
#include "circlesum/charpin/sw.hpp"
#include "circlesum/error.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

using namespace circlesum;

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

// C(n, k) mod 2 by Lucas: odd iff the bits of k are a subset of those of n.
int binom_mod2(int n, int k) { return k >= 0 && k <= n && (k & ~n) == 0 ? 1 : 0; }

// Independent Gauss-sum oracle: builds q(x) from scratch by the extension rule.
std::complex<double> oracle_gauss_sum(const QuadraticEnhancement& e) {
  std::complex<double> s = 0.0;
  const std::complex<double> powers[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  for (unsigned x = 0; x < (1u << e.rank); ++x) {
    int q = 0;
    for (int i = 0; i < e.rank; ++i) {
      if (!(x >> i & 1)) continue;
      q += e.q[i];
      for (int j = i + 1; j < e.rank; ++j)
        if (x >> j & 1) q += 2 * e.form[i][j];
    }
    s += powers[q % 4];
  }
  return s;
}

int oracle_beta(const QuadraticEnhancement& e) {
  const auto s = oracle_gauss_sum(e);
  const double turns = std::arg(s) / (2 * std::numbers::pi) * 8.0;
  return ((static_cast<int>(std::lround(turns)) % 8) + 8) % 8;
}

bool nondegenerate_mod2(std::vector<std::vector<int>> m) {
  const int n = static_cast<int>(m.size());
  for (int c = 0, r = 0; c < n; ++c, ++r) {
    int p = r;
    while (p < n && !m[p][c]) ++p;
    if (p == n) return false;
    std::swap(m[p], m[r]);
    for (int i = 0; i < n; ++i)
      if (i != r && m[i][c])
        for (int j = 0; j < n; ++j) m[i][j] ^= m[r][j];
  }
  return true;
}

QuadraticEnhancement random_enhancement(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank(1, 4), bit(0, 1);
  for (;;) {
    QuadraticEnhancement e;
    e.rank = rank(rng);
    e.form.assign(e.rank, std::vector<int>(e.rank, 0));
    for (int i = 0; i < e.rank; ++i)
      for (int j = i; j < e.rank; ++j) e.form[i][j] = e.form[j][i] = bit(rng);
    if (!nondegenerate_mod2(e.form)) continue;
    for (int i = 0; i < e.rank; ++i) e.q.push_back(e.form[i][i] + 2 * bit(rng));
    return e;
  }
}

QuadraticEnhancement torus() {
  QuadraticEnhancement e;
  e.rank = 2;
  e.form = {{0, 1}, {1, 0}};
  e.q = {0, 0};
  return e;
}

}  // namespace

TEST_CASE("mod 2 polynomials") {
  const auto p = Mod2Poly::one_plus_a(4);
  CHECK(p.pow(2).to_string() == "1 + a^2");
  CHECK((p * p) == p.pow(2));
  CHECK((p + p) == Mod2Poly(4));
  CHECK(Mod2Poly::one(3).to_string() == "1");
  CHECK(p.pow(5).coeff(5) == 0);  // truncated
}

TEST_CASE("total Stiefel-Whitney class of RP^n") {
  CHECK(total_sw_rp(2).to_string() == "1 + a + a^2");
  CHECK(total_sw_rp(3).to_string() == "1");
  CHECK(total_sw_rp(1).to_string() == "1");
  for (int n = 1; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(total_sw_rp(n).coeff(k) == binom_mod2(n + 1, k));
}

TEST_CASE("pin verdicts") {
  SUBCASE("examples") {
    const auto r4 = pin_verdicts(4);
    CHECK(r4.pin_plus);
    CHECK_FALSE(r4.pin_minus);
    CHECK_FALSE(r4.spin);
    CHECK(r4.structure_count == 2);
    const auto r5 = pin_verdicts(5);
    CHECK_FALSE(r5.pin_plus);
    CHECK_FALSE(r5.pin_minus);
    CHECK_FALSE(r5.structure_count.has_value());
    const auto r7 = pin_verdicts(7);
    CHECK(r7.pin_plus);
    CHECK(r7.pin_minus);
    CHECK(r7.spin);
  }
  SUBCASE("period-4 pattern for n = 2..32") {
    for (int n = 2; n <= 32; ++n) {
      CAPTURE(n);
      const auto r = pin_verdicts(n);
      switch (n % 4) {
        case 0: CHECK((r.pin_plus && !r.pin_minus)); break;
        case 1: CHECK((!r.pin_plus && !r.pin_minus)); break;
        case 2: CHECK((!r.pin_plus && r.pin_minus)); break;
        case 3: CHECK((r.pin_plus && r.pin_minus && r.spin)); break;
      }
      // w2 and w1 directly from binomials
      const int w1 = binom_mod2(n + 1, 1), w2 = binom_mod2(n + 1, 2);
      CHECK(r.pin_plus == (w2 == 0));
      CHECK(r.pin_minus == ((w2 + w1) % 2 == 0));
    }
  }
  SUBCASE("table") {
    const auto csv = obstruction_table_csv(2, 5);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,w1,w2,w3,w4,spin,pin_plus,pin_minus,count");
    std::getline(in, line);
    CHECK(line == "2,1,1,0,0,no,no,yes,2");
    std::getline(in, line);
    CHECK(line == "3,0,0,0,0,yes,yes,yes,2");
    std::getline(in, line);
    CHECK(line == "4,1,0,0,1,no,yes,no,2");
    std::getline(in, line);
    CHECK(line == "5,0,1,0,1,no,no,no,none");
  }
}

TEST_CASE("top Stiefel-Whitney number") {
  CHECK(sw_number_top(2) == 1);
  CHECK(sw_number_top(4) == 1);
  CHECK(sw_number_top(3) == 0);
  for (int k = 1; k <= 16; ++k) CHECK(sw_number_top(2 * k) == 1);
}

TEST_CASE("Brown invariant") {
  CHECK(brown_invariant(rp2_enhancement(1)) == 1);
  CHECK(brown_invariant(rp2_enhancement(3)) == 7);
  CHECK(brown_invariant(torus()) == 0);
  CHECK(is_consistent(torus()));
  CHECK(is_nondegenerate(torus()));

  SUBCASE("disjoint union of two RP^2 with the same structure") {
    const auto e = direct_sum(rp2_enhancement(1), rp2_enhancement(1));
    CHECK(brown_invariant(e) == 2);
    CHECK(oracle_beta(e) == 2);
  }
  SUBCASE("additive on random pairs") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
      const auto a = random_enhancement(rng), b = random_enhancement(rng);
      const auto s = direct_sum(a, b);
      CHECK(is_consistent(s));
      CHECK(brown_invariant(s) == oracle_beta(s));
      CHECK(brown_invariant(s) == (brown_invariant(a) + brown_invariant(b)) % 8);
    }
  }
  SUBCASE("Gauss-sum modulus is sqrt(|H_1|)") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
      const auto e = random_enhancement(rng);
      CHECK(std::abs(std::abs(gauss_sum(e)) - std::sqrt(std::pow(2.0, e.rank))) < kGaussModulusTol);
      CHECK(std::abs(gauss_sum(e) - oracle_gauss_sum(e)) < 1e-12);
    }
  }
  SUBCASE("malformed enhancements") {
    QuadraticEnhancement bad;
    bad.rank = 1;
    bad.form = {{1}};
    bad.q = {0};  // must be odd on a vector of odd square
    CHECK_FALSE(is_consistent(bad));
    CHECK(kind_of([&] { brown_invariant(bad); }) == ErrorKind::gauss_sum_modulus_mismatch);
    QuadraticEnhancement degenerate;
    degenerate.rank = 1;
    degenerate.form = {{0}};
    degenerate.q = {0};
    CHECK_FALSE(is_nondegenerate(degenerate));
    CHECK(kind_of([&] { brown_invariant(degenerate); }) ==
          ErrorKind::gauss_sum_modulus_mismatch);
  }
}

TEST_CASE("bordism ledger") {
  SUBCASE("RP^2 + RP^2 is 2 mod 8") {
    const auto c = ledger_add(rp_class(2), rp_class(2));
    CHECK_FALSE(c.is_zero());
    CHECK(c.element_string() == "2 mod 8");
    CHECK(same_class(c, brown_class(direct_sum(rp2_enhancement(1), rp2_enhancement(1)))));
  }
  SUBCASE("zero is the identity") {
    const auto z = bounding_witness("S(2g+R)", 4);
    CHECK(z.is_zero());
    const auto c = rp_class(4);
    CHECK(same_class(ledger_add(z, c), c));
    CHECK(same_class(ledger_add(c, z), c));
  }
  SUBCASE("RP^4 + RP^4 is twice the generator") {
    const auto c = ledger_add(rp_class(4), rp_class(4));
    CHECK(c.terms.at("[RP^4]") == 2);
    CHECK(c.group.provenance == "literature table");
  }
  SUBCASE("commutative and associative") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> sign(0, 1);
    auto pick = [&] {
      switch (sign(rng) + 2 * sign(rng)) {
        case 0: return rp_class(2, 1);
        case 1: return rp_class(2, -1);
        case 2: return bounding_witness("T2", 2);
        default: return brown_class(direct_sum(rp2_enhancement(1), rp2_enhancement(1)));
      }
    };
    for (int i = 0; i < 50; ++i) {
      const auto a = pick(), b = pick(), c = pick();
      CHECK(same_class(ledger_add(a, b), ledger_add(b, a)));
      CHECK(same_class(ledger_add(ledger_add(a, b), c), ledger_add(a, ledger_add(b, c))));
    }
    CHECK(ledger_add(rp_class(2, 1), rp_class(2, -1)).is_zero());
  }
  SUBCASE("mismatched structures") {
    CHECK(kind_of([] { ledger_add(rp_class(2), rp_class(4)); }) == ErrorKind::structure_mismatch);
    CHECK(kind_of([] { ledger_add(rp_class(4), rp_class(6)); }) == ErrorKind::structure_mismatch);
  }
  SUBCASE("zero classes need a witness") {
    CHECK(kind_of([] { zero_class(2, PinKind::minus, ""); }) == ErrorKind::invalid_argument);
  }
  SUBCASE("pin kind of RP^{2k}") {
    CHECK(rp_pin_kind(2) == PinKind::minus);
    CHECK(rp_pin_kind(4) == PinKind::plus);
    CHECK(rp_pin_kind(6) == PinKind::minus);
    CHECK(rp_pin_kind(8) == PinKind::plus);
  }
}

TEST_CASE("bounding witnesses") {
  const auto s = bounding_witness("S(2g+R)", 4);
  CHECK(s.is_zero());
  CHECK(s.witness == "[0,1]xD^2x~RP^2");
  CHECK(bounding_witness("T2", 2).witness == "solid torus");
  CHECK(bounding_witness("K2", 2).witness == "solid Klein bottle");
  CHECK(kind_of([] { bounding_witness("RP2", 2); }) == ErrorKind::not_a_recognized_double);
}

TEST_CASE("distinguish") {
  auto tag = [](const std::string& t) { return descriptor_from_tag(t).char_tag(); };
  SUBCASE("P4(0) vs P4(2)") {
    const auto r = distinguish(tag("P4.0"), tag("P4.2"));
    CHECK(r.class_a.element_string() == "0");
    CHECK(r.class_b.element_string() == "2 mod 8");
    CHECK(r.verdict == "distinct");
  }
  SUBCASE("X5(0) vs X5(2)") {
    const auto r = distinguish(tag("X5.0"), tag("X5.2"));
    CHECK(r.class_a.is_zero());
    CHECK(r.class_a.witness.has_value());
    CHECK(r.class_b.terms.at("[RP^4]") == 2);
    CHECK(r.verdict == "distinct");
    CHECK(r.concluded());
  }
  SUBCASE("X5(0) vs itself") {
    const auto r = distinguish(tag("X5.0"), tag("X5.0"));
    CHECK(r.verdict == "no conclusion");
  }
  SUBCASE("unknown group order is inconclusive") {
    const auto r = distinguish(tag("X9.0"), tag("X9.2"));
    CHECK(r.verdict == "inconclusive");
    CHECK_FALSE(r.concluded());
  }
  SUBCASE("missing tag") {
    CHECK(kind_of([&] { distinguish(std::nullopt, tag("X5.0")); }) ==
          ErrorKind::missing_characteristic_tag);
  }
  SUBCASE("json carries provenance") {
    const auto j = to_json(distinguish(tag("X5.0"), tag("X5.2")));
    CHECK(j.dump().find("literature table") != std::string::npos);
  }
}
