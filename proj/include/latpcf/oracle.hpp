#pragma once

// Brute-force enumeration of site pairs. Shares nothing with the closed forms
// in analytic.hpp; distances come from pair_distance and lattice adjacency.

#include "latpcf/analytic.hpp"
#include "latpcf/metric.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace latpcf {

inline constexpr std::int64_t kOracleSiteCap = 20736;

/// s(m) for every reachable m by visiting all unordered site pairs.
inline PairCounts brute_site_pairs(TessellationKind kind, MetricKind metric, BoundaryKind bc, const Dims& dims,
                                   std::int64_t cap = kOracleSiteCap) {
  validate_geometry(kind, dims, bc);
  const auto z = dims.site_count();
  if (z > cap)
    throw ValidationError("oracle refuses " + std::to_string(z) + " sites (cap " + std::to_string(cap) + ")");
  PairCounts out;
  const auto n = static_cast<std::size_t>(z);
  if (kind == TessellationKind::Triangle || kind == TessellationKind::Hexagon) {
    detail::require_metric(kind, metric);
    const LatticeAdjacency adj(kind, bc, dims);
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = adj.distances_from(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (d[j] < 0)
          ++out.unreachable;
        else
          out.add(d[j]);
      }
    }
    return out;
  }
  std::vector<Site> sites(n);
  for (std::size_t i = 0; i < n; ++i) sites[i] = detail::site_from_index(dims, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.add(pair_distance(kind, metric, bc, dims, sites[i], sites[j]));
  return out;
}

struct ValidationRow {
  TessellationKind kind;
  MetricKind metric;
  BoundaryKind bc;
  Dims dims;
  int m = 0;
  std::int64_t analytic = 0;
  std::int64_t brute = 0;
  bool match = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::int64_t configurations = 0;  // (kind, metric, bc, dims) points checked
  std::int64_t skipped = 0;         // dims rejected by the geometry or with no domain

  std::int64_t mismatches() const {
    std::int64_t n = 0;
    for (const auto& r : rows) n += r.match ? 0 : 1;
    return n;
  }
  bool ok() const { return !rows.empty() && mismatches() == 0; }
};

struct Sweep {
  int min_extent = 4;
  int max_extent = 12;
  int cube_max_extent = 8;
};

struct Combination {
  TessellationKind kind;
  MetricKind metric;
  BoundaryKind bc;
};

inline std::vector<Combination> supported_combinations() {
  std::vector<Combination> out;
  for (auto bc : {BoundaryKind::Periodic, BoundaryKind::NonPeriodic}) {
    for (auto metric : {MetricKind::Taxicab, MetricKind::Uniform}) {
      out.push_back({TessellationKind::Square, metric, bc});
      out.push_back({TessellationKind::Cube, metric, bc});
    }
    out.push_back({TessellationKind::Triangle, MetricKind::Taxicab, bc});
    out.push_back({TessellationKind::Hexagon, MetricKind::Taxicab, bc});
  }
  return out;
}

using SitePairFormula = std::function<std::int64_t(TessellationKind, MetricKind, BoundaryKind, const Dims&, int)>;

/// Compares `formula` with enumeration for every supported combination, every
/// dims in the sweep and every m in the declared domain. Mismatches are
/// recorded, not thrown.
inline ValidationReport verify_normalization(const Sweep& sweep, const SitePairFormula& formula = site_pairs_analytic) {
  ValidationReport report;
  for (const auto& c : supported_combinations()) {
    const bool cube = c.kind == TessellationKind::Cube;
    const int hi = cube ? std::min(sweep.max_extent, sweep.cube_max_extent) : sweep.max_extent;
    const int zhi = cube ? hi : sweep.min_extent;
    for (int lx = sweep.min_extent; lx <= hi; ++lx)
      for (int ly = sweep.min_extent; ly <= hi; ++ly)
        for (int lz = sweep.min_extent; lz <= zhi; ++lz) {
          const Dims dims = cube ? dims3(lx, ly, lz) : dims2(lx, ly);
          std::optional<DistanceDomain> domain;
          try {
            domain = distance_domain(c.kind, c.metric, c.bc, dims);
          } catch (const ValidationError&) {
            ++report.skipped;
            continue;
          }
          ++report.configurations;
          const auto brute = brute_site_pairs(c.kind, c.metric, c.bc, dims);
          for (int m = domain->m_min; m <= domain->m_max; ++m) {
            ValidationRow row{c.kind, c.metric, c.bc, dims, m, 0, static_cast<std::int64_t>(brute.at(m)), false};
            try {
              row.analytic = formula(c.kind, c.metric, c.bc, dims, m);
              row.match = row.analytic == row.brute;
            } catch (const std::exception&) {
              row.analytic = -1;
            }
            report.rows.push_back(row);
          }
        }
  }
  return report;
}

inline void write_report_csv(const ValidationReport& report, std::ostream& out) {
  out << "kind,metric,bc,dims,m,analytic,brute,match\n";
  for (const auto& r : report.rows)
    out << to_string(r.kind) << ',' << to_string(r.metric) << ',' << to_string(r.bc) << ',' << r.dims.to_string()
        << ',' << r.m << ',' << r.analytic << ',' << r.brute << ',' << (r.match ? "true" : "false") << '\n';
}

/// Domain caps under which the closed forms hold, with the sweep that
/// confirmed them.
inline void write_validity_table(const ValidationReport& report, const Sweep& sweep, std::ostream& out) {
  auto constraint = [](const Combination& c) -> std::string {
    const bool p = c.bc == BoundaryKind::Periodic;
    switch (c.kind) {
      case TessellationKind::Square:
        return p ? "m <= min(floor((Lx-1)/2), floor((Ly-1)/2))" : "m <= min(Lx, Ly) - 1";
      case TessellationKind::Cube:
        return p ? "m <= min(floor((Lx-1)/2), floor((Ly-1)/2), floor((Lz-1)/2))" : "m <= min(Lx, Ly, Lz) - 1";
      case TessellationKind::Triangle:
        return p ? "Lx, Ly even; m <= min(Lx/2 - 1, Ly - 1)" : "not (Lx odd and Ly even); m <= min(Lx, 2*Ly)";
      case TessellationKind::Hexagon:
        return p ? "Lx even; m <= min(floor((Lx-1)/2), floor((Ly-1)/2))" : "m <= min(Lx, Ly)";
    }
    return "";
  };
  out << "kind,metric,bc,constraint,verified_extents,rows,mismatches\n";
  for (const auto& c : supported_combinations()) {
    std::int64_t rows = 0, bad = 0;
    for (const auto& r : report.rows)
      if (r.kind == c.kind && r.metric == c.metric && r.bc == c.bc) {
        ++rows;
        bad += r.match ? 0 : 1;
      }
    const int hi = c.kind == TessellationKind::Cube ? std::min(sweep.max_extent, sweep.cube_max_extent) : sweep.max_extent;
    out << to_string(c.kind) << ',' << to_string(c.metric) << ',' << to_string(c.bc) << ",\"" << constraint(c)
        << "\"," << sweep.min_extent << ".." << hi << ',' << rows << ',' << bad << '\n';
  }
}

}  // namespace latpcf
