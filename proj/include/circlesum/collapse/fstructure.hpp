#pragma once

#include "circlesum/builders/glued.hpp"
#include "circlesum/catalog/descriptor.hpp"
#include "circlesum/collapse/collapse_metric.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace circlesum {

struct FPiece {
  std::string open_set;      // U_i
  std::string cover;         // cover of U_i
  int deck_order = 1;        // |Gamma_i|
  int torus_rank = 1;        // k_i
  std::string action;        // "hopf" or "axis" on the sphere factor
  std::string fixed_points;  // "" or "poles"
  std::string equivariance;  // Gamma-equivariance rule, for nontrivial Gamma_i
};

struct FStructureSpec {
  std::string manifold;
  std::vector<FPiece> pieces;
  std::vector<std::string> overlap_records;
  bool polarized = false;
  bool t_structure = false;
  std::optional<std::string> global_free_action;
};

/// X descriptors: two pieces with trivial covers and the Hopf action on the
/// sphere factor (polarized T-structure). P descriptors: double covers
/// D^2 x S^(2k-2) with the axis rotation fixing the poles (not polarized).
FStructureSpec build_structure(const ManifoldDescriptor& d);

/// A P structure that claims to be polarized although its pieces declare
/// polar fixed points; must be rejected under the polarization item.
FStructureSpec corrupted_fixture(const ManifoldDescriptor& d);

/// Realized action of a piece on its block cover.
CircleAction piece_action(const FPiece& piece, const ProductMetric& cover);

struct ItemCheck {
  int item = 0;
  std::string name;
  bool pass = false;
  double defect = 0.0;
  std::string note;
};

struct StructureReport {
  std::string manifold;
  bool polarized = false;
  bool t_structure = false;
  std::vector<ItemCheck> items;

  bool pass() const;
  const ItemCheck* first_failure() const;
};

inline constexpr double kStructureTol = 1e-9;

/// Checks Items 1-7 of the structure against the realized blocks of `gs`.
StructureReport check_structure(const FStructureSpec& s, const GluedSpace& gs, int n_samples = 200,
                                double tol = kStructureTol);
/// Same, but throws item_violation naming the first failing item.
StructureReport validate_structure(const FStructureSpec& s, const GluedSpace& gs,
                                   int n_samples = 200, double tol = kStructureTol);

nlohmann::json to_json(const FStructureSpec& s);
nlohmann::json to_json(const StructureReport& r);

}  // namespace circlesum
