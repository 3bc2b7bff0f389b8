#include "circlesum/collapse/trace.hpp"

#include "circlesum/error.hpp"

#include <algorithm>
#include <cmath>

namespace circlesum {

CollapseTrace collapse_trace(const FStructureSpec& s, const GluedSpace& gs,
                             const std::vector<double>& eps, const TraceOptions& opts) {
  if (eps.empty()) throw Error(ErrorKind::invalid_argument, "empty epsilon sequence");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || eps[i] > 1.0)
      throw Error(ErrorKind::epsilon_out_of_range, "epsilon " + format_double(eps[i]) + " not in (0, 1]");
    if (i && !(eps[i] < eps[i - 1]))
      throw Error(ErrorKind::invalid_argument, "epsilon sequence must be strictly decreasing");
  }
  if (s.pieces.size() != 2) throw Error(ErrorKind::invalid_argument, "structure needs two pieces");

  CollapseTrace t;
  t.manifold = s.manifold;
  t.polarized = s.polarized;
  const QuotientMetric* blocks[2] = {&gs.block_a(), &gs.block_b()};
  for (double e : eps) {
    TraceRow row;
    row.eps = e;
    std::vector<ScanReport> parts;
    for (int i = 0; i < 2; ++i) {
      const ProductMetric& cover = blocks[i]->cover();
      const CircleAction act = piece_action(s.pieces[i], cover);
      row.volume += collapsed_volume(cover, act, e) / blocks[i]->action().group_order;
      ScanOptions so{opts.n_points, opts.n_planes, opts.seed + static_cast<std::uint64_t>(i), opts.tol};
      parts.push_back(curvature_scan(collapse_metric(cover, act, e), so));
    }
    const ScanReport merged = merge_scans(s.manifold, parts);
    row.min_k = merged.min_k;
    row.max_k = merged.max_k;
    t.rows.push_back(row);
  }
  t.volume_ratio = t.rows.back().volume / t.rows.front().volume;

  if (t.rows.size() == 1) {
    t.verdict = "no verdict";
    return t;
  }
  bool ok = t.volume_ratio < opts.volume_ratio_max;
  for (const auto& r : t.rows) {
    if (t.polarized)
      ok = ok && std::max(std::abs(r.min_k), std::abs(r.max_k)) <= opts.curvature_bound;
    else
      ok = ok && r.min_k >= -opts.tol;
  }
  t.verdict = !ok ? "no collapse" : t.polarized ? "bounded collapse" : "lower-bounded collapse";
  return t;
}

std::string trace_csv(const CollapseTrace& t) {
  std::string s = "epsilon,volume,minK,maxK,verdict\n";
  for (const auto& r : t.rows)
    s += format_double(r.eps) + "," + format_double(r.volume) + "," + format_double(r.min_k) + "," +
         format_double(r.max_k) + "," + t.verdict + "\n";
  return s;
}

}  // namespace circlesum
