#include "circlesum/catalog/cli.hpp"

#include "circlesum/catalog/descriptor.hpp"
#include "circlesum/catalog/realize.hpp"
#include "circlesum/catalog/report.hpp"
#include "circlesum/charpin/bordism.hpp"
#include "circlesum/charpin/sw.hpp"
#include "circlesum/collapse/fstructure.hpp"
#include "circlesum/collapse/trace.hpp"
#include "circlesum/error.hpp"
#include "circlesum/geom/scan.hpp"

#include <CLI11.hpp>

#include <optional>
#include <sstream>

namespace circlesum {

namespace {

struct Sink {
  std::ostream& out;
  std::ostream& err;
  std::optional<std::filesystem::path> dir;

  void emit(const std::string& file, const std::string& content, bool to_stdout = true) {
    if (to_stdout) out << content;
    if (dir) write_atomic(*dir / file, content);
  }
  int verdict(bool pass, const std::string& failure) {
    if (pass) return 0;
    err << "FAIL: " << failure << "\n";
    return 1;
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, "bad number '" + item + "' in list");
    }
  }
  return v;
}

std::pair<std::string, std::string> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(ErrorKind::invalid_argument, "--pair expects <tagA>,<tagB>");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metrics, bordism ledgers and collapse traces for circle-sum manifolds",
               "circlesum"};
  app.require_subcommand(1);
  std::string report_flag;
  app.add_option("--report-dir", report_flag,
                 std::string("Directory for report files (default: $") + kReportDirEnv + ")");

  std::string tag = "X5.2", profile = "collar_torpedo", pair, eps_list = "1,0.5,0.1,0.02";
  int k_min = kDefaultKMin, k_max = kDefaultKMax, points = 1000, planes = 5, n_max = 32,
      n_min = 2, samples = kGluingSamples;
  std::uint64_t seed = 1;
  double tol = 1e-7, collar = -1.0;
  bool corrupted = false;

  auto* catalog = app.add_subcommand("catalog", "Manifold catalog")->require_subcommand(1);
  auto* catalog_list_cmd = catalog->add_subcommand("list", "List descriptors as JSON");
  catalog_list_cmd->add_option("--k-min", k_min)->capture_default_str();
  catalog_list_cmd->add_option("--k-max", k_max)->capture_default_str();

  auto* curvature = app.add_subcommand("curvature", "Curvature")->require_subcommand(1);
  auto* scan = curvature->add_subcommand("scan", "Sectional curvature scan");
  scan->add_option("--manifold", tag)->required();
  scan->add_option("--profile", profile, "collar_torpedo, hemisphere or bundle (j = 0)")
      ->capture_default_str();
  scan->add_option("--points", points)->capture_default_str();
  scan->add_option("--planes", planes)->capture_default_str();
  scan->add_option("--seed", seed)->capture_default_str();
  scan->add_option("--tol", tol)->capture_default_str();

  auto* boundary = app.add_subcommand("boundary", "Block boundary")->require_subcommand(1);
  auto* bcheck = boundary->add_subcommand("check", "Product-collar / jet check on both blocks");
  bcheck->add_option("--manifold", tag)->required();
  bcheck->add_option("--collar", collar, "Collar depth (default: the profile's collar)");
  bcheck->add_option("--profile", profile)->capture_default_str();

  auto* glue = app.add_subcommand("glue", "Gluing")->require_subcommand(1);
  auto* gcheck = glue->add_subcommand("check", "Gluing isometry and interface jets");
  gcheck->add_option("--manifold", tag)->required();
  gcheck->add_option("--profile", profile)->capture_default_str();
  gcheck->add_option("--samples", samples)->capture_default_str();

  auto* pin = app.add_subcommand("pin", "Pin obstructions")->require_subcommand(1);
  auto* table = pin->add_subcommand("table", "Obstruction table of RP^n as CSV");
  table->add_option("--n-max", n_max)->capture_default_str();
  table->add_option("--n-min", n_min)->capture_default_str();

  auto* dist = app.add_subcommand("distinguish", "Bordism ledger for a pair of descriptors");
  dist->add_option("--pair", pair, "<tagA>,<tagB>")->required();

  auto* collapse = app.add_subcommand("collapse", "Collapse")->require_subcommand(1);
  auto* trace = collapse->add_subcommand("trace", "Volume and curvature along a collapse");
  trace->add_option("--manifold", tag)->required();
  trace->add_option("--eps", eps_list)->capture_default_str();
  trace->add_option("--points", points)->capture_default_str();
  trace->add_option("--planes", planes)->capture_default_str();
  trace->add_option("--seed", seed)->capture_default_str();
  trace->add_option("--profile", profile)->capture_default_str();

  auto* structure = app.add_subcommand("structure", "F-structures")->require_subcommand(1);
  auto* validate = structure->add_subcommand("validate", "Check the structure's items");
  validate->add_option("--manifold", tag)->required();
  validate->add_option("--profile", profile)->capture_default_str();
  validate->add_option("--samples", samples, "Samples per check")->default_val(200);
  validate->add_flag("--corrupted", corrupted, "Use the corrupted polarization fixture");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? 0 : 2;
  }

  try {
    Sink sink{out, err, report_dir(report_flag.empty() ? std::nullopt
                                                       : std::optional<std::string>(report_flag))};

    if (catalog_list_cmd->parsed()) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& d : catalog_list(k_min, k_max)) list.push_back(to_json(d));
      sink.emit("catalog.json", dump_json(list));
      return 0;
    }

    if (table->parsed()) {
      sink.emit("pin-table.csv", obstruction_table_csv(n_min, n_max));
      return 0;
    }

    if (dist->parsed()) {
      const auto [ta, tb] = parse_pair(pair);
      const DistinguishReport r =
          distinguish(descriptor_from_tag(ta).char_tag(), descriptor_from_tag(tb).char_tag());
      out << "classes " << r.class_a.element_string() << " vs " << r.class_b.element_string()
          << "; " << r.verdict << "\n";
      sink.emit("distinguish-" + ta + "-" + tb + ".json", dump_json(to_json(r)));
      return sink.verdict(r.concluded(), "distinguish " + pair + ": " + r.reason);
    }

    const ManifoldDescriptor d = descriptor_from_tag(tag);

    if (scan->parsed()) {
      const ScanOptions opts{points, planes, seed, tol};
      ScanReport r;
      if (profile == "bundle") {
        r = curvature_scan(bundle_metric(d).metric().renamed(d.tag()), opts);
      } else {
        r = curvature_scan(realize_checked(d, profile_kind_from_string(profile)).glued.field, opts);
      }
      sink.emit("scan-" + d.tag() + ".csv", csv_header_scan() + "\n" + csv_row(r) + "\n");
      if (sink.dir) write_atomic(*sink.dir / ("scan-" + d.tag() + ".json"), dump_json(to_json(r)));
      return sink.verdict(r.nonnegative(), "curvature scan " + d.tag() + ": min K " +
                                               format_double(r.min_k) + " below -" +
                                               format_double(tol));
    }

    const ProfileKind kind = profile_kind_from_string(profile);

    if (bcheck->parsed()) {
      const double tol_b = kind == ProfileKind::collar_torpedo ? kProductFormTol : kJetTol;
      nlohmann::json blocks = nlohmann::json::array();
      bool pass = true;
      for (int i = 0; i < 2; ++i) {
        const QuotientMetric q = disk_block(d, kind);
        const WarpProfile& p = q.cover().factors()[0].profile();
        const BoundaryReport r =
            boundary_form_check(q, collar > 0 ? collar : default_collar_depth(p), tol_b);
        pass = pass && r.pass;
        blocks.push_back(to_json(r));
      }
      sink.emit("boundary-" + d.tag() + ".json",
                dump_json({{"manifold", d.tag()}, {"blocks", blocks}, {"verdict", pass ? "pass" : "fail"}}));
      return sink.verdict(pass, "boundary check " + d.tag());
    }

    if (gcheck->parsed()) {
      const QuotientMetric a = disk_block(d, kind), b = disk_block(d, kind);
      const double depth = default_collar_depth(a.cover().factors()[0].profile());
      const GluedSpace gs(d.tag(), a, b, d.loop(), depth);
      const GluingReport g = gluing_isometry_check(gs, samples, kIsometryTol);
      nlohmann::json j{{"manifold", d.tag()}, {"loop", d.loop().label()},
                       {"loop_class", loop_class(d.loop())}, {"gluing", to_json(g)}};
      bool pass = g.pass;
      std::string failure = "gluing isometry " + d.tag();
      if (pass) {
        try {
          j["jet_defects"] = glued_metric(gs, kJetTol).jet_defects;
        } catch (const Error& e) {
          pass = false;
          failure = e.what();
          j["jet_error"] = e.what();
        }
      }
      j["verdict"] = pass ? "pass" : "fail";
      sink.emit("glue-" + d.tag() + ".json", dump_json(j));
      return sink.verdict(pass, failure);
    }

    if (trace->parsed()) {
      const GluedSpace gs = realize(d, kind);
      TraceOptions opts;
      opts.n_points = points;
      opts.n_planes = planes;
      opts.seed = seed;
      const CollapseTrace t = collapse_trace(build_structure(d), gs, parse_list(eps_list), opts);
      sink.emit("trace-" + d.tag() + ".csv", trace_csv(t));
      return sink.verdict(t.pass(), "collapse trace " + d.tag() + ": " + t.verdict);
    }

    if (validate->parsed()) {
      const GluedSpace gs = realize(d, kind);
      const FStructureSpec s = corrupted ? corrupted_fixture(d) : build_structure(d);
      const StructureReport r = check_structure(s, gs, samples);
      sink.emit("structure-" + d.tag() + (corrupted ? "-corrupted" : "") + ".json",
                dump_json({{"structure", to_json(s)}, {"report", to_json(r)}}));
      const ItemCheck* f = r.first_failure();
      return sink.verdict(f == nullptr, f ? "Item " + std::to_string(f->item) + " (" + f->name +
                                                "): " + f->note
                                          : "");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace circlesum
