#pragma once

#include "circlesum/charpin/brown.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>

namespace circlesum {

enum class PinKind { plus, minus };
std::string to_string(PinKind k);
/// RP^(2k) carries pin+ for even k and pin- for odd k.
PinKind rp_pin_kind(int dim);

struct GroupInfo {
  std::optional<int> order;  // cyclic order, or unknown
  std::string provenance;
};

/// Pin bordism groups that are imported rather than computed. Dimension 2
/// (pin-, Z/8) is additionally certified by the Gauss-sum oracle.
GroupInfo literature_group(int dim, PinKind kind);

/// Element of a pin bordism group as a sum of named generators.
struct BordismClass {
  int dim = 0;
  PinKind structure = PinKind::minus;
  GroupInfo group;
  std::map<std::string, long> terms;  // generator -> coefficient, reduced mod order
  std::optional<std::string> witness;  // nullbordism, when asserted zero

  bool is_zero() const { return terms.empty(); }
  /// "0", "2 mod 8", "2*[RP^8]"
  std::string element_string() const;
};

/// Zero class; the witness (a manifold the representative bounds) is mandatory.
BordismClass zero_class(int dim, PinKind kind, std::string witness);
/// Class of a surface with the given enhancement: its Brown invariant in Z/8.
BordismClass brown_class(const QuadraticEnhancement& e);
/// [RP^dim] with its pin structure phi (sign = -1 for the other structure).
BordismClass rp_class(int dim, int sign = 1);

/// Group addition (disjoint union = circle sum). Throws structure_mismatch.
BordismClass ledger_add(const BordismClass& a, const BordismClass& b);
bool same_class(const BordismClass& a, const BordismClass& b);

/// Recognized doubles: "S(2g+R)" of dimension 2k >= 2, the double of the
/// nonorientable disk bundle over RP^(2k-2); the torus "T2" with q = 0 and
/// the Klein bottle "K2" = RP^2 # RP^2 with structures (phi, -phi).
/// Throws not_a_recognized_double otherwise.
BordismClass bounding_witness(const std::string& manifold, int dim);

/// Characteristic-submanifold data of a descriptor.
struct CharTag {
  std::string manifold;     // e.g. "X5.2"
  std::string submanifold;  // e.g. "RP4#RP4"
  int dim = 0;              // dimension of the characteristic submanifold
  int j = 0;                // gluing class, 0 or 2
  int ledger_dim = 0;       // 2: Brown ledger; otherwise dim with literature groups
};

/// Class of the characteristic submanifold in its ledger.
BordismClass characteristic_class(const CharTag& t);

struct DistinguishReport {
  CharTag a, b;
  BordismClass class_a, class_b;
  std::string verdict;  // "distinct", "no conclusion", "inconclusive"
  std::string reason;
  bool concluded() const { return verdict != "inconclusive"; }
};

/// Throws missing_characteristic_tag if either tag is absent.
DistinguishReport distinguish(const std::optional<CharTag>& a, const std::optional<CharTag>& b);

nlohmann::json to_json(const BordismClass& c);
nlohmann::json to_json(const DistinguishReport& r);

}  // namespace circlesum
