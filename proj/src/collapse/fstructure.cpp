#include "circlesum/collapse/fstructure.hpp"

#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace circlesum {

using std::numbers::pi;

FStructureSpec build_structure(const ManifoldDescriptor& d) {
  FStructureSpec s;
  s.manifold = d.tag();
  const int m = d.sphere_dim();
  const std::string sm = std::to_string(m);
  if (d.family == 'X') {
    const std::string u = "D2x~RP" + sm;
    for (int i = 0; i < 2; ++i) s.pieces.push_back({u, u, 1, 1, "hopf", "", ""});
    s.overlap_records.push_back("collar S1xS" + sm +
                                ": Hopf actions of both blocks commute through the gluing map");
    s.polarized = true;
    s.t_structure = true;
    if (d.j == 0)
      s.global_free_action = "Hopf circle on the S" + sm + " factor of S2xS" + sm + "/T";
  } else {
    for (int i = 0; i < 2; ++i)
      s.pieces.push_back({"D2x~S" + sm, "D2xS" + sm, 2, 1, "axis", "poles",
                          "gamma(phi(t)x) = phi(Phi(gamma)t)(gamma x)"});
    s.overlap_records.push_back("collar S1x~S" + sm +
                                ": axis rotations of both blocks commute through the gluing map");
    s.polarized = false;
    s.t_structure = false;
  }
  return s;
}

FStructureSpec corrupted_fixture(const ManifoldDescriptor& d) {
  FStructureSpec s = build_structure(d);
  s.manifold += "[corrupted]";
  s.polarized = true;
  return s;
}

CircleAction piece_action(const FPiece& piece, const ProductMetric& cover) {
  if (piece.action == "hopf") return hopf_action(cover);
  if (piece.action == "axis") return axis_action(cover);
  throw Error(ErrorKind::invalid_argument, "unknown piece action '" + piece.action + "'");
}

bool StructureReport::pass() const { return first_failure() == nullptr; }

const ItemCheck* StructureReport::first_failure() const {
  for (const auto& c : items)
    if (!c.pass) return &c;
  return nullptr;
}

namespace {

// Coordinates of the sphere factor's ambient space fixed by the action.
std::vector<int> fixed_axes(const CircleAction& a, int ambient) {
  std::vector<int> used(ambient, 0), out;
  for (auto [i, j] : a.planes) used[i] = used[j] = 1;
  for (int k = 0; k < ambient; ++k)
    if (!used[k]) out.push_back(k);
  return out;
}

std::vector<Point> samples(const ProductMetric& cover, int n, std::uint64_t seed) {
  std::vector<Point> out;
  for (int s = 0; s < n; ++s)
    out.push_back(cover.realized().chart().from_unit(
        shifted_halton(cover.dim(), static_cast<std::uint64_t>(s) + 1, seed)));
  return out;
}

// Like verify_isometry, but a flowed sample that lands in a coordinate margin
// (a chart artifact, not a property of the action) is skipped and counted.
std::pair<double, int> flow_isometry_defect(const MetricField& m, const SmoothMap& phi, int n) {
  const Chart& c = m.chart();
  double worst = 0.0;
  int skipped = 0;
  for (int s = 0; s < n; ++s) {
    const Point p = c.from_unit(shifted_halton(c.dim(), static_cast<std::uint64_t>(s), 43));
    const Point q = c.wrap(phi.map(p));
    if (!c.in_interior(q)) {
      ++skipped;
      continue;
    }
    const Eigen::MatrixXd j = phi.jacobian(p);
    worst = std::max(worst, (j.transpose() * m.g(q) * j - m.g(p)).norm());
  }
  return {worst, skipped};
}

}  // namespace

StructureReport check_structure(const FStructureSpec& s, const GluedSpace& gs, int n_samples,
                                double tol) {
  StructureReport rep;
  rep.manifold = s.manifold;
  rep.polarized = s.polarized;
  rep.t_structure = s.t_structure;

  const QuotientMetric* blocks[2] = {&gs.block_a(), &gs.block_b()};
  {
    ItemCheck c{1, "finite open cover", s.pieces.size() == 2, 0.0, ""};
    c.note = std::to_string(s.pieces.size()) + " pieces over 2 realized blocks";
    rep.items.push_back(c);
    if (!c.pass) return rep;
  }

  std::vector<CircleAction> actions;
  for (int i = 0; i < 2; ++i) actions.push_back(piece_action(s.pieces[i], blocks[i]->cover()));

  ItemCheck galois{2, "finite Galois covering", true, 0.0, ""};
  ItemCheck torus{3, "effective torus action with finite kernel", true, 0.0, ""};
  ItemCheck equiv{4, "Gamma-equivariance", true, 0.0, ""};
  ItemCheck overlap{5, "lifted actions commute on overlaps", true, 0.0, ""};
  ItemCheck tstr{6, "T-structure (trivial coverings)", true, 0.0, ""};
  ItemCheck polar{7, "polarized (fixed-point free)", true, 0.0, ""};

  const double times[] = {0.7, 2.3};
  bool any_fixed = false;
  for (int i = 0; i < 2; ++i) {
    const FPiece& piece = s.pieces[i];
    const ProductMetric& cover = blocks[i]->cover();
    const IsometricAction& deck = blocks[i]->action();
    const CircleAction& act = actions[i];
    const std::string who = "piece " + std::to_string(i + 1) + ": ";

    // Item 2: either the action descends (trivial cover) or Gamma is the block's deck group.
    if (piece.deck_order == 1) {
      double d = 0.0;
      for (const auto& t : deck.generators)
        for (double tm : times) {
          const Eigen::MatrixXd r = circle_matrix(cover, act, tm);
          d = std::max(d, (t * r - r * t).norm());
        }
      galois.defect = std::max(galois.defect, d);
      if (d > tol) {
        galois.pass = false;
        galois.note += who + "action does not descend to the block; ";
      }
    } else if (piece.deck_order != deck.group_order) {
      galois.pass = false;
      galois.note += who + "declared |Gamma| " + std::to_string(piece.deck_order) +
                     " but the block cover has deck group of order " +
                     std::to_string(deck.group_order) + "; ";
    }

    // Item 3: period 2 pi, acts nontrivially, by isometries preserving the chart.
    const double period = (circle_matrix(cover, act, 2.0 * pi) -
                           Eigen::MatrixXd::Identity(cover.ambient_dim(), cover.ambient_dim()))
                              .norm();
    double moved = 0.0;
    for (const Point& p : samples(cover, n_samples, 41)) {
      const Eigen::VectorXd y = cover.embed(p);
      moved = std::max(moved, (circle_matrix(cover, act, 1.0) * y - y).norm());
    }
    torus.defect = std::max(torus.defect, period);
    if (period > tol || moved < 1e-3 || piece.torus_rank != 1) {
      torus.pass = false;
      torus.note += who + "action is not an effective circle action; ";
    }
    for (double tm : times) {
      const SmoothMap phi = linear_chart_map(cover, circle_matrix(cover, act, tm), act.label());
      const auto [defect, skipped] = flow_isometry_defect(cover.realized(), phi, n_samples);
      torus.defect = std::max(torus.defect, defect);
      if (defect > tol) {
        torus.pass = false;
        torus.note += who + "flow is not isometric; ";
      }
      if (skipped * 10 > n_samples) {
        torus.pass = false;
        torus.note += who + std::to_string(skipped) + " flowed samples left the chart; ";
      }
    }

    // Item 4: gamma R(t) = R(+-t) gamma.
    if (piece.deck_order > 1) {
      double best = 1e300;
      std::string rule;
      for (double sign : {1.0, -1.0}) {
        double d = 0.0;
        for (const auto& t : deck.generators)
          for (double tm : times)
            d = std::max(d, (t * circle_matrix(cover, act, tm) -
                             circle_matrix(cover, act, sign * tm) * t)
                                .norm());
        if (d < best) {
          best = d;
          rule = sign > 0 ? "Phi(gamma) = id" : "Phi(gamma) = inversion";
        }
      }
      equiv.defect = std::max(equiv.defect, best);
      if (best > tol || piece.equivariance.empty()) {
        equiv.pass = false;
        equiv.note += who + "no equivariance rule; ";
      } else {
        equiv.note += who + rule + "; ";
      }
    }

    // Item 7: detected fixed points against the declaration.
    const Factor& fac = cover.factors()[act.factor];
    const auto axes = fixed_axes(act, fac.ambient_dim());
    const bool detected = !axes.empty();
    any_fixed = any_fixed || detected;
    if (detected) {
      // A pole of the sphere factor does not move.
      Eigen::VectorXd y = cover.embed(samples(cover, 1, 47)[0]);
      const int o = cover.ambient_offset(act.factor);
      y.segment(o, fac.ambient_dim()).setZero();
      y[o + axes[0]] = fac.radius();
      const double disp = (circle_matrix(cover, act, 1.0) * y - y).norm();
      polar.defect = std::max(polar.defect, disp);
      polar.note += who + "fixed points at the poles (displacement " + format_double(disp) + "); ";
    } else {
      double least = 1e300;
      for (const Point& p : samples(cover, n_samples, 53)) {
        const Eigen::VectorXd y = cover.embed(p);
        least = std::min(least, (circle_matrix(cover, act, 1.0) * y - y).norm());
      }
      if (least < 1e-6) {
        polar.pass = false;
        polar.note += who + "action claimed free but a sample is fixed; ";
      }
    }
    const bool declared = piece.fixed_points == "poles";
    if (declared != detected) {
      polar.pass = false;
      polar.note += who + (declared ? "declared poles are not fixed; " : "undeclared fixed points; ");
    }
    if (piece.deck_order != 1 && s.t_structure) {
      tstr.pass = false;
      tstr.note += who + "nontrivial covering in a claimed T-structure; ";
    }
  }
  if (s.polarized == any_fixed) {
    polar.pass = false;
    polar.note += s.polarized ? "claimed polarized but the torus action has fixed points"
                              : "claimed non-polarized but every action is fixed-point free";
  }

  // Item 5: on the collar the two circle actions meet through the gluing map.
  if (gs.fiber_dim() > 0) {
    const int o = gs.block_a().cover().ambient_offset(actions[0].factor);
    const int n = gs.block_a().cover().factors()[actions[0].factor].ambient_dim();
    for (int k = 0; k < n_samples; ++k) {
      const Eigen::VectorXd u = shifted_halton(3, static_cast<std::uint64_t>(k) + 1, 59);
      const double theta = 2.0 * pi * u[0];
      const Eigen::MatrixXd ra =
          circle_matrix(gs.block_a().cover(), actions[0], 2.0 * pi * u[1]).block(o, o, n, n);
      const Eigen::MatrixXd rb =
          circle_matrix(gs.block_b().cover(), actions[1], 2.0 * pi * u[2]).block(o, o, n, n);
      const Eigen::MatrixXd al = gs.map().fiber(theta);
      const Eigen::MatrixXd lifted = al.transpose() * rb * al;
      overlap.defect = std::max(overlap.defect, (ra * lifted - lifted * ra).norm());
    }
    if (overlap.defect > tol) {
      overlap.pass = false;
      overlap.note = "circle actions do not commute on the collar";
    } else {
      overlap.note = "actions fix the collar coordinate and commute through the gluing map";
    }
  }
  if (galois.note.empty()) galois.note = "coverings match the realized blocks";
  if (tstr.pass) tstr.note = s.t_structure ? "all coverings trivial" : "not claimed";

  rep.items.insert(rep.items.end(), {galois, torus, equiv, overlap, tstr, polar});
  return rep;
}

StructureReport validate_structure(const FStructureSpec& s, const GluedSpace& gs, int n_samples,
                                   double tol) {
  StructureReport r = check_structure(s, gs, n_samples, tol);
  if (const ItemCheck* f = r.first_failure())
    throw Error(ErrorKind::item_violation, s.manifold + ": Item " + std::to_string(f->item) +
                                               " (" + f->name + ") violated: " + f->note);
  return r;
}

nlohmann::json to_json(const FStructureSpec& s) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : s.pieces)
    pieces.push_back({{"open_set", p.open_set},
                      {"cover", p.cover},
                      {"deck_order", p.deck_order},
                      {"torus_rank", p.torus_rank},
                      {"action", p.action},
                      {"fixed_points", p.fixed_points},
                      {"equivariance", p.equivariance}});
  nlohmann::json j{{"manifold", s.manifold},
                   {"pieces", pieces},
                   {"overlap_records", s.overlap_records},
                   {"polarized", s.polarized},
                   {"t_structure", s.t_structure}};
  j["global_free_action"] =
      s.global_free_action ? nlohmann::json(*s.global_free_action) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const StructureReport& r) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& c : r.items)
    items.push_back({{"item", c.item},
                     {"name", c.name},
                     {"pass", c.pass},
                     {"defect", c.defect},
                     {"note", c.note}});
  nlohmann::json j{{"manifold", r.manifold},
                   {"polarized", r.polarized},
                   {"t_structure", r.t_structure},
                   {"items", items},
                   {"verdict", r.pass() ? "pass" : "fail"}};
  if (const ItemCheck* f = r.first_failure()) j["failing_item"] = f->item;
  return j;
}

}  // namespace circlesum
