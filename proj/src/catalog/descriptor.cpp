#include "circlesum/catalog/descriptor.hpp"

#include "circlesum/error.hpp"

#include <regex>

namespace circlesum {

std::string ManifoldDescriptor::tag() const {
  return std::string(1, family) + std::to_string(dim()) + "." + std::to_string(j);
}

RotationLoop ManifoldDescriptor::loop() const {
  const int n = sphere_dim() + 1;
  return j == 0 ? RotationLoop::identity(n) : RotationLoop::block_rotation(n, n - 2, n - 1);
}

std::optional<CharTag> ManifoldDescriptor::char_tag() const {
  if (char_submanifold.empty()) return std::nullopt;
  CharTag t;
  t.manifold = tag();
  t.submanifold = char_submanifold;
  t.j = j;
  if (family == 'X') {
    t.dim = 2 * k;
    t.ledger_dim = 2 * k;
  } else {
    // The P pair is compared in the surface ledger, where the Gauss-sum
    // oracle certifies the group.
    t.dim = 2;
    t.ledger_dim = 2;
  }
  return t;
}

ManifoldDescriptor make_descriptor(char family, int k, int j) {
  if (family != 'X' && family != 'P')
    throw Error(ErrorKind::invalid_argument, std::string("unknown family ") + family);
  if (k < 2) throw Error(ErrorKind::invalid_argument, "k must be >= 2");
  if (j != 0 && j != 2) throw Error(ErrorKind::invalid_argument, "j must be 0 or 2");
  ManifoldDescriptor d;
  d.family = family;
  d.k = k;
  d.j = j;
  d.orientable = family == 'X';
  d.blocks = {BlockSpec{d.sphere_dim()}, BlockSpec{d.sphere_dim()}};
  d.gluing = d.loop().label();
  const std::string rp = family == 'X' ? "RP^" + std::to_string(2 * k) : "RP^2";
  if (family == 'X')
    d.char_submanifold = j == 0 ? "S(2g+R)" : rp + "#" + rp;
  else
    d.char_submanifold = j == 0 ? "K2" : rp + "#" + rp;
  d.gamma_tag = "g->RP^" + std::to_string(2 * k - 2);
  return d;
}

ManifoldDescriptor descriptor_from_tag(const std::string& tag) {
  static const std::regex re(R"(([XP])(\d+)\.([02]))");
  std::smatch m;
  if (!std::regex_match(tag, m, re))
    throw Error(ErrorKind::unknown_descriptor, "unknown manifold tag '" + tag + "'");
  const char family = m[1].str()[0];
  const int dim = std::stoi(m[2].str());
  const int j = std::stoi(m[3].str());
  const bool parity_ok = family == 'X' ? dim % 2 == 1 : dim % 2 == 0;
  const int k = family == 'X' ? (dim - 1) / 2 : dim / 2;
  if (!parity_ok || k < 2)
    throw Error(ErrorKind::unknown_descriptor, "unknown manifold tag '" + tag + "'");
  return make_descriptor(family, k, j);
}

std::vector<ManifoldDescriptor> catalog_list(int k_min, int k_max) {
  if (k_min < 2) throw Error(ErrorKind::invalid_argument, "k must be >= 2");
  if (k_max < k_min) throw Error(ErrorKind::invalid_argument, "empty k range");
  std::vector<ManifoldDescriptor> out;
  for (int k = k_min; k <= k_max; ++k)
    for (char f : {'X', 'P'})
      for (int j : {0, 2}) out.push_back(make_descriptor(f, k, j));
  return out;
}

nlohmann::json to_json(const ManifoldDescriptor& d) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : d.blocks) blocks.push_back({{"sphere_dim", b.sphere_dim}, {"deck", b.deck}});
  return {{"tag", d.tag()},
          {"family", std::string(1, d.family)},
          {"k", d.k},
          {"j", d.j},
          {"dim", d.dim()},
          {"orientable", d.orientable},
          {"blocks", blocks},
          {"gluing", d.gluing},
          {"loop_class", loop_class(d.loop())},
          {"char_submanifold", d.char_submanifold},
          {"gamma_tag", d.gamma_tag}};
}

ManifoldDescriptor descriptor_from_json(const nlohmann::json& j) {
  try {
    ManifoldDescriptor d;
    d.family = j.at("family").get<std::string>().at(0);
    d.k = j.at("k").get<int>();
    d.j = j.at("j").get<int>();
    d.orientable = j.at("orientable").get<bool>();
    for (const auto& b : j.at("blocks"))
      d.blocks.push_back({b.at("sphere_dim").get<int>(), b.at("deck").get<std::string>()});
    d.gluing = j.at("gluing").get<std::string>();
    d.char_submanifold = j.at("char_submanifold").get<std::string>();
    d.gamma_tag = j.at("gamma_tag").get<std::string>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_argument, std::string("malformed descriptor JSON: ") + e.what());
  }
}

}  // namespace circlesum
