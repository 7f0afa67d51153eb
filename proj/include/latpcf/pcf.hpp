#pragma once

#include "latpcf/analytic.hpp"
#include "latpcf/metric.hpp"
#include "latpcf/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace latpcf {

struct PcfPoint {
  int m = 0;
  std::uint64_t count = 0;
  double expected = 0.0;
  double f = 0.0;
  // Present when every input was an integer count (not for annular or
  // averages of inexact profiles).
  std::optional<Rational> expected_exact;
  std::optional<Rational> f_exact;
};

struct ProfileMeta {
  std::string lattice;  // tessellation name, or "graph"
  std::string metric;
  std::string bc;       // empty for graphs
  std::string dims;     // "LxxLy[xLz]" or "Z=<count>"
  std::optional<std::int64_t> n;
  std::optional<Seed> seed;
  std::string generator;
  std::vector<std::pair<std::string, std::string>> extra;

  void set(const std::string& key, const std::string& value) {
    for (auto& kv : extra)
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    extra.emplace_back(key, value);
  }
  std::optional<std::string> get(const std::string& key) const {
    for (const auto& kv : extra)
      if (kv.first == key) return kv.second;
    return std::nullopt;
  }
  bool same_geometry(const ProfileMeta& o) const {
    return lattice == o.lattice && metric == o.metric && bc == o.bc && dims == o.dims;
  }
};

struct PcfProfile {
  ProfileMeta meta;
  std::vector<PcfPoint> points;

  bool exact() const {
    return !points.empty() && std::all_of(points.begin(), points.end(), [](const PcfPoint& p) { return p.f_exact.has_value(); });
  }
  std::vector<double> f_values() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.f);
    return out;
  }
  const PcfPoint& at(int m) const {
    for (const auto& p : points)
      if (p.m == m) return p;
    throw ValidationError("profile has no entry for m=" + std::to_string(m));
  }
};

/// A point with exact expectation and ratio. Expectation must be positive.
inline PcfPoint exact_point(int m, std::uint64_t count, const Rational& expected) {
  PcfPoint p;
  p.m = m;
  p.count = count;
  p.expected_exact = expected;
  p.f_exact = Rational(BigInt(count)) / expected;
  p.expected = to_double(expected);
  p.f = to_double(*p.f_exact);
  return p;
}

inline ProfileMeta grid_meta(const OccupancyGrid& grid, std::string_view metric) {
  ProfileMeta meta;
  meta.lattice = std::string(to_string(grid.kind()));
  meta.metric = std::string(metric);
  meta.bc = std::string(to_string(grid.bc()));
  meta.dims = grid.dims().to_string();
  meta.n = grid.agent_count();
  return meta;
}

namespace detail {
inline void require_pairs(std::int64_t n) {
  if (n < 2) throw ValidationError("PCF undefined: zero expected pairs (N=" + std::to_string(n) + ")");
}
}  // namespace detail

/// f(m) = c(m) / E[c(m)] over the whole distance domain of the grid.
inline PcfProfile pcf_profile(const OccupancyGrid& grid, MetricKind metric) {
  if (metric != MetricKind::Taxicab && metric != MetricKind::Uniform)
    throw ValidationError("pcf_profile takes the taxicab or uniform metric");
  detail::require_metric(grid.kind(), metric);
  detail::require_pairs(grid.agent_count());
  const auto domain = distance_domain(grid.kind(), metric, grid.bc(), grid.dims());
  const auto counts = count_agent_pairs_within(grid, metric, domain.m_max);
  PcfProfile prof;
  prof.meta = grid_meta(grid, to_string(metric));
  for (int m = domain.m_min; m <= domain.m_max; ++m) {
    const auto s = site_pairs_analytic(grid.kind(), metric, grid.bc(), grid.dims(), m);
    prof.points.push_back(exact_point(m, counts.at(m), expected_pairs(grid.agent_count(), grid.site_count(), s)));
  }
  return prof;
}

struct RectilinearProfiles {
  PcfProfile x;
  PcfProfile y;
  PcfProfile averaged;  // (f_x + f_y) / 2; count and expected are summed
};

inline RectilinearProfiles rectilinear_profile(const OccupancyGrid& grid) {
  detail::require_pairs(grid.agent_count());
  const auto [cx, cy] = rectilinear_counts(grid);
  const auto domain = distance_domain(grid.kind(), MetricKind::RectilinearX, grid.bc(), grid.dims());
  RectilinearProfiles out;
  out.x.meta = grid_meta(grid, to_string(MetricKind::RectilinearX));
  out.y.meta = grid_meta(grid, to_string(MetricKind::RectilinearY));
  out.averaged.meta = grid_meta(grid, "rectilinear");
  const auto n = grid.agent_count();
  for (int m = domain.m_min; m <= domain.m_max; ++m) {
    auto px = exact_point(m, cx.at(m), expected_rectilinear(m, Axis::X, n, grid.dims()));
    auto py = exact_point(m, cy.at(m), expected_rectilinear(m, Axis::Y, n, grid.dims()));
    PcfPoint pr;
    pr.m = m;
    pr.count = px.count + py.count;
    pr.expected_exact = *px.expected_exact + *py.expected_exact;
    pr.expected = to_double(*pr.expected_exact);
    pr.f_exact = (*px.f_exact + *py.f_exact) / 2;
    pr.f = to_double(*pr.f_exact);
    out.x.points.push_back(std::move(px));
    out.y.points.push_back(std::move(py));
    out.averaged.points.push_back(std::move(pr));
  }
  return out;
}

/// Euclidean PCF with annulus-area normalisation. Bins run up to the largest
/// radius that fits inside the periodic half-box.
inline PcfProfile annular_profile(const OccupancyGrid& grid, double delta) {
  if (grid.kind() != TessellationKind::Square || grid.bc() != BoundaryKind::Periodic)
    throw ValidationError("annular PCF needs a periodic square grid");
  if (!(delta > 0.0)) throw ValidationError("annular bandwidth must be positive");
  detail::require_pairs(grid.agent_count());
  const auto& d = grid.dims();
  const int k_max = static_cast<int>(std::floor(std::min(d.lx / 2, d.ly / 2) / delta));
  if (k_max < 1) throw ValidationError("annular bandwidth wider than the half-box");
  const auto counts = annular_bin_counts(grid, delta);
  PcfProfile prof;
  prof.meta = grid_meta(grid, to_string(MetricKind::Annular));
  std::ostringstream bw;
  bw.precision(12);
  bw << delta;
  prof.meta.set("bandwidth", bw.str());
  prof.meta.set("normalization", "approximate");
  for (int k = 1; k <= k_max; ++k) {
    PcfPoint p;
    p.m = k;
    p.count = counts.at(k);
    p.expected = expected_annular(k, delta, grid.agent_count(), d);
    p.f = static_cast<double>(p.count) / p.expected;
    prof.points.push_back(std::move(p));
  }
  return prof;
}

/// Pointwise mean of f. Exact when every input is exact; otherwise summed in
/// input order. Counts and expectations are summed.
inline PcfProfile average_profiles(std::span<const PcfProfile> profiles) {
  if (profiles.empty()) throw ValidationError("nothing to average");
  const auto& first = profiles.front();
  for (const auto& p : profiles) {
    if (!p.meta.same_geometry(first.meta))
      throw ValidationError("cannot average profiles of different lattices, metrics, boundaries or sizes");
    if (p.points.size() != first.points.size())
      throw ValidationError("cannot average profiles over different distance domains");
    for (std::size_t i = 0; i < p.points.size(); ++i)
      if (p.points[i].m != first.points[i].m)
        throw ValidationError("cannot average profiles over different distance domains");
  }
  const bool exact = std::all_of(profiles.begin(), profiles.end(), [](const PcfProfile& p) { return p.exact(); });
  const auto r = static_cast<double>(profiles.size());
  PcfProfile out;
  out.meta = first.meta;
  out.meta.seed.reset();
  out.meta.set("replicates", std::to_string(profiles.size()));
  const bool same_n = std::all_of(profiles.begin(), profiles.end(), [&](const PcfProfile& p) { return p.meta.n == first.meta.n; });
  if (!same_n) out.meta.n.reset();
  for (std::size_t i = 0; i < first.points.size(); ++i) {
    PcfPoint q;
    q.m = first.points[i].m;
    double f_sum = 0.0, e_sum = 0.0;
    Rational f_exact = 0, e_exact = 0;
    for (const auto& p : profiles) {
      const auto& pt = p.points[i];
      q.count += pt.count;
      f_sum += pt.f;
      e_sum += pt.expected;
      if (exact) {
        f_exact += *pt.f_exact;
        e_exact += *pt.expected_exact;
      }
    }
    if (exact) {
      q.f_exact = f_exact / static_cast<long long>(profiles.size());
      q.expected_exact = e_exact;
      q.f = to_double(*q.f_exact);
      q.expected = to_double(e_exact);
    } else {
      q.f = f_sum / r;
      q.expected = e_sum;
    }
    out.points.push_back(std::move(q));
  }
  return out;
}

/// 1-based position of the first trough: the first m with f(m) <= f(m+1),
/// or the last m if f keeps falling. Ties go to the smaller m.
inline int first_minimum(std::span<const double> f) {
  if (f.empty()) throw ValidationError("first minimum of an empty profile");
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    if (f[i] <= f[i + 1]) return static_cast<int>(i) + 1;
  return static_cast<int>(f.size());
}

inline int first_minimum(const PcfProfile& profile) {
  const auto f = profile.f_values();
  return profile.points[first_minimum(std::span<const double>(f)) - 1].m;
}

/// 1-based position of the first attainment of the global minimum.
inline int global_minimum(std::span<const double> f) {
  if (f.empty()) throw ValidationError("minimum of an empty profile");
  return static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin()) + 1;
}

}  // namespace latpcf
