#include "circlesum/charpin/bordism.hpp"

#include "circlesum/error.hpp"

namespace circlesum {

namespace {

constexpr const char* kLiterature = "literature table";
constexpr const char* kBrownGenerator = "beta";

long reduce(long v, const std::optional<int>& order) {
  if (!order) return v;
  return ((v % *order) + *order) % *order;
}

}  // namespace

std::string to_string(PinKind k) { return k == PinKind::plus ? "pin+" : "pin-"; }

PinKind rp_pin_kind(int dim) {
  if (dim < 2 || dim % 2)
    throw Error(ErrorKind::invalid_argument, "RP^n pin ledger needs even n >= 2");
  return (dim / 2) % 2 == 0 ? PinKind::plus : PinKind::minus;
}

GroupInfo literature_group(int dim, PinKind kind) {
  if (dim == 2 && kind == PinKind::minus)
    return {8, std::string(kLiterature) + "; certified by Gauss-sum oracle"};
  if (dim == 4 && kind == PinKind::plus) return {16, kLiterature};
  if (dim == 6 && kind == PinKind::minus) return {16, kLiterature};
  return {std::nullopt, "unknown"};
}

std::string BordismClass::element_string() const {
  if (terms.empty()) return "0";
  if (terms.size() == 1 && terms.begin()->first == kBrownGenerator)
    return std::to_string(terms.begin()->second) + " mod 8";
  std::string s;
  for (const auto& [gen, c] : terms) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c) + "*" + gen;
  }
  if (group.order) s += " in Z/" + std::to_string(*group.order);
  return s;
}

BordismClass zero_class(int dim, PinKind kind, std::string witness) {
  if (witness.empty())
    throw Error(ErrorKind::invalid_argument, "a zero class needs a nullbordism witness");
  BordismClass c;
  c.dim = dim;
  c.structure = kind;
  c.group = literature_group(dim, kind);
  c.witness = std::move(witness);
  return c;
}

BordismClass brown_class(const QuadraticEnhancement& e) {
  BordismClass c;
  c.dim = 2;
  c.structure = PinKind::minus;
  c.group = literature_group(2, PinKind::minus);
  const long beta = brown_invariant(e);
  if (beta) c.terms[kBrownGenerator] = beta;
  return c;
}

BordismClass rp_class(int dim, int sign) {
  if (dim == 2) return brown_class(rp2_enhancement(sign > 0 ? 1 : 3));
  BordismClass c;
  c.dim = dim;
  c.structure = rp_pin_kind(dim);
  c.group = literature_group(dim, c.structure);
  const long v = reduce(sign > 0 ? 1 : -1, c.group.order);
  if (v) c.terms["[RP^" + std::to_string(dim) + "]"] = v;
  return c;
}

BordismClass ledger_add(const BordismClass& a, const BordismClass& b) {
  if (a.dim != b.dim || a.structure != b.structure)
    throw Error(ErrorKind::structure_mismatch,
                "cannot add classes of " + std::to_string(a.dim) + "-dim " + to_string(a.structure) +
                    " and " + std::to_string(b.dim) + "-dim " + to_string(b.structure));
  if (a.group.order && b.group.order && *a.group.order != *b.group.order)
    throw Error(ErrorKind::structure_mismatch, "classes come from groups of different order");
  BordismClass r;
  r.dim = a.dim;
  r.structure = a.structure;
  r.group = a.group.order ? a.group : b.group;
  r.terms = a.terms;
  for (const auto& [gen, c] : b.terms) r.terms[gen] += c;
  for (auto it = r.terms.begin(); it != r.terms.end();) {
    it->second = reduce(it->second, r.group.order);
    it = it->second == 0 ? r.terms.erase(it) : std::next(it);
  }
  return r;
}

bool same_class(const BordismClass& a, const BordismClass& b) {
  return a.dim == b.dim && a.structure == b.structure && a.terms == b.terms;
}

BordismClass bounding_witness(const std::string& manifold, int dim) {
  if (manifold == "S(2g+R)" && dim >= 2 && dim % 2 == 0) {
    const PinKind kind = rp_pin_kind(dim);
    return zero_class(dim, kind, "[0,1]xD^2x~RP^" + std::to_string(dim - 2));
  }
  if (manifold == "T2" && dim == 2) return zero_class(2, PinKind::minus, "solid torus");
  if (manifold == "K2" && dim == 2) return zero_class(2, PinKind::minus, "solid Klein bottle");
  throw Error(ErrorKind::not_a_recognized_double,
              manifold + " (dim " + std::to_string(dim) + ") is not a recognized double");
}

BordismClass characteristic_class(const CharTag& t) {
  if (t.j != 0 && t.j != 2) throw Error(ErrorKind::invalid_argument, "gluing class must be 0 or 2");
  if (t.ledger_dim == 2) {
    // RP^2 #_{S^1} RP^2 with structures (phi, -phi) for j = 0 and (phi, phi) for j = 2.
    const QuadraticEnhancement e =
        direct_sum(rp2_enhancement(1), rp2_enhancement(t.j == 0 ? 3 : 1));
    BordismClass c = brown_class(e);
    if (t.j == 0) {
      if (!c.is_zero())
        throw Error(ErrorKind::invalid_argument, "Brown ledger: double is not null-bordant");
      c.witness = bounding_witness("K2", 2).witness;
    }
    return c;
  }
  if (t.j == 0) return bounding_witness("S(2g+R)", t.ledger_dim);
  return ledger_add(rp_class(t.ledger_dim), rp_class(t.ledger_dim));
}

DistinguishReport distinguish(const std::optional<CharTag>& a, const std::optional<CharTag>& b) {
  if (!a || !b)
    throw Error(ErrorKind::missing_characteristic_tag,
                std::string("descriptor without characteristic-submanifold tag: ") +
                    (!a ? "first" : "second"));
  if (a->ledger_dim != b->ledger_dim || a->dim != b->dim)
    throw Error(ErrorKind::structure_mismatch, "descriptors live in different dimensions");
  DistinguishReport r{*a, *b, characteristic_class(*a), characteristic_class(*b), "", ""};
  if (same_class(r.class_a, r.class_b)) {
    r.verdict = "no conclusion";
    r.reason = "identical bordism classes";
  } else if (!r.class_a.group.order) {
    r.verdict = "inconclusive";
    r.reason = "group order unknown; nonvanishing of 2*[RP^" + std::to_string(a->ledger_dim) +
               "] is not certified";
  } else {
    r.verdict = "distinct";
    r.reason = "distinct bordism classes => not homeomorphic";
  }
  return r;
}

nlohmann::json to_json(const BordismClass& c) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [g, v] : c.terms) terms[g] = v;
  nlohmann::json j{{"dim", c.dim},
                   {"structure", to_string(c.structure)},
                   {"group_order", c.group.order ? nlohmann::json(*c.group.order) : nlohmann::json("unknown")},
                   {"provenance", c.group.provenance},
                   {"element", c.element_string()},
                   {"terms", terms}};
  j["witness"] = c.witness ? nlohmann::json(*c.witness) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const DistinguishReport& r) {
  auto side = [](const CharTag& t, const BordismClass& c) {
    return nlohmann::json{{"manifold", t.manifold},
                          {"characteristic_submanifold", t.submanifold},
                          {"j", t.j},
                          {"ledger_dim", t.ledger_dim},
                          {"class", to_json(c)}};
  };
  return {{"pair", {side(r.a, r.class_a), side(r.b, r.class_b)}},
          {"verdict", r.verdict},
          {"reason", r.reason}};
}

}  // namespace circlesum
