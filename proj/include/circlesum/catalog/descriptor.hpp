#pragma once

#include "circlesum/builders/loop.hpp"
#include "circlesum/charpin/bordism.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace circlesum {

/// Disk-bundle block: (D^2 x S^m) / (r, A).
struct BlockSpec {
  int sphere_dim = 0;
  std::string deck = "(r,A)";
  bool operator==(const BlockSpec&) const = default;
};

/// X^(2k+1)(j) or P^(2k)(j).
struct ManifoldDescriptor {
  char family = 'X';
  int k = 2;
  int j = 0;
  bool orientable = true;
  std::vector<BlockSpec> blocks;
  std::string gluing;            // loop label
  std::string char_submanifold;  // tag of the characteristic submanifold
  std::string gamma_tag;         // Hopf line bundle marker for S(2g+R)

  int dim() const { return family == 'X' ? 2 * k + 1 : 2 * k; }
  int sphere_dim() const { return family == 'X' ? 2 * k - 1 : 2 * k - 2; }
  /// "X5.2", "P4.0"
  std::string tag() const;
  /// Identity for j = 0; for j = 2 one turn in the last coordinate plane of
  /// the sphere factor's ambient space.
  RotationLoop loop() const;
  std::optional<CharTag> char_tag() const;

  bool operator==(const ManifoldDescriptor&) const = default;
};

/// Throws invalid_argument for k < 2 or j not in {0, 2}.
ManifoldDescriptor make_descriptor(char family, int k, int j);
/// Throws unknown_descriptor.
ManifoldDescriptor descriptor_from_tag(const std::string& tag);

inline constexpr int kDefaultKMin = 2;
inline constexpr int kDefaultKMax = 5;

/// For each k: X(0), X(2), P(0), P(2).
std::vector<ManifoldDescriptor> catalog_list(int k_min = kDefaultKMin, int k_max = kDefaultKMax);

nlohmann::json to_json(const ManifoldDescriptor& d);
ManifoldDescriptor descriptor_from_json(const nlohmann::json& j);

}  // namespace circlesum
