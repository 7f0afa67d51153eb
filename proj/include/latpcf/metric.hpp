#pragma once

#include "latpcf/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <utility>
#include <vector>

namespace latpcf {

/// Histogram of unordered pairs by integer distance. Index 0 is unused for
/// pairs of distinct sites; `unreachable` collects pairs with no finite path.
struct PairCounts {
  std::vector<std::uint64_t> by_distance;
  std::uint64_t unreachable = 0;

  std::uint64_t at(std::int64_t m) const {
    return m >= 0 && static_cast<std::size_t>(m) < by_distance.size() ? by_distance[m] : 0;
  }
  void add(std::int64_t m, std::uint64_t n = 1) {
    if (static_cast<std::size_t>(m) >= by_distance.size()) by_distance.resize(m + 1, 0);
    by_distance[m] += n;
  }
  std::int64_t max_distance() const {
    for (auto m = static_cast<std::int64_t>(by_distance.size()) - 1; m > 0; --m)
      if (by_distance[m]) return m;
    return 0;
  }
  std::uint64_t total() const {
    return std::accumulate(by_distance.begin(), by_distance.end(), std::uint64_t{0}) + unreachable;
  }
  /// Pairs at distances strictly greater than `m_max` (outside a domain).
  std::uint64_t beyond(std::int64_t m_max) const {
    std::uint64_t n = 0;
    for (std::size_t m = static_cast<std::size_t>(std::max<std::int64_t>(m_max + 1, 0)); m < by_distance.size(); ++m)
      n += by_distance[m];
    return n;
  }
  void truncate(std::int64_t m_max) {
    if (static_cast<std::size_t>(m_max + 1) < by_distance.size()) by_distance.resize(m_max + 1);
  }
  bool operator==(const PairCounts& o) const {
    const auto n = std::max(by_distance.size(), o.by_distance.size());
    for (std::size_t m = 0; m < n; ++m)
      if (at(static_cast<std::int64_t>(m)) != o.at(static_cast<std::int64_t>(m))) return false;
    return unreachable == o.unreachable;
  }
};

namespace detail {

inline int axis_offset(int a, int b, int extent, bool periodic) {
  const int d = std::abs(a - b);
  return periodic ? std::min(d, extent - d) : d;
}

inline std::array<int, 3> offsets(BoundaryKind bc, const Dims& dims, const Site& a, const Site& b) {
  const bool p = bc == BoundaryKind::Periodic;
  return {axis_offset(a.x, b.x, dims.lx, p), axis_offset(a.y, b.y, dims.ly, p),
          axis_offset(a.z, b.z, dims.layers(), p)};
}

inline int wrap(int v, int extent) { return ((v - 1) % extent + extent) % extent + 1; }

inline void require_in_range(const Dims& dims, const Site& s) {
  if (s.x < 1 || s.x > dims.lx || s.y < 1 || s.y > dims.ly || s.z < 1 || s.z > dims.layers())
    throw ValidationError("site (" + std::to_string(s.x) + "," + std::to_string(s.y) + "," +
                          std::to_string(s.z) + ") outside " + dims.to_string());
}

inline std::size_t site_index(const Dims& dims, const Site& s) {
  return static_cast<std::size_t>(s.x - 1) +
         static_cast<std::size_t>(dims.lx) * (static_cast<std::size_t>(s.y - 1) +
                                              static_cast<std::size_t>(dims.ly) * (s.z - 1));
}

inline Site site_from_index(const Dims& dims, std::size_t i) {
  const auto lx = static_cast<std::size_t>(dims.lx), ly = static_cast<std::size_t>(dims.ly);
  return Site{static_cast<int>(i % lx) + 1, static_cast<int>((i / lx) % ly) + 1,
              static_cast<int>(i / (lx * ly)) + 1};
}

/// Raw unit-step displacements before wrapping/clipping.
inline std::vector<std::array<int, 3>> unit_steps(TessellationKind kind, MetricKind metric, const Site& a) {
  std::vector<std::array<int, 3>> steps;
  switch (kind) {
    case TessellationKind::Square:
    case TessellationKind::Cube: {
      const int zr = kind == TessellationKind::Cube ? 1 : 0;
      for (int dz = -zr; dz <= zr; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int l1 = std::abs(dx) + std::abs(dy) + std::abs(dz);
            if (l1 == 0) continue;
            if (metric == MetricKind::Taxicab && l1 != 1) continue;
            steps.push_back({dx, dy, dz});
          }
      break;
    }
    case TessellationKind::Triangle: {
      const bool up = (a.x + a.y) % 2 == 0;
      steps = {{-1, 0, 0}, {1, 0, 0}, {0, up ? -1 : 1, 0}};
      break;
    }
    case TessellationKind::Hexagon: {
      const bool odd = a.x % 2 == 1;
      const int lo = odd ? -1 : 0;
      steps = {{0, -1, 0}, {0, 1, 0}, {-1, lo, 0}, {-1, lo + 1, 0}, {1, lo, 0}, {1, lo + 1, 0}};
      break;
    }
  }
  return steps;
}

inline void require_metric(TessellationKind kind, MetricKind metric) {
  const bool square_like = kind == TessellationKind::Square || kind == TessellationKind::Cube;
  const bool ok = metric == MetricKind::Taxicab || (square_like && metric == MetricKind::Uniform);
  if (!ok)
    throw ValidationError(std::string(to_string(metric)) + " metric is not defined on " +
                          std::string(to_string(kind)) + " lattices");
}

}  // namespace detail

/// Sites at distance one from `a`, deduplicated and in canonical order.
/// `metric` selects the von Neumann (Taxicab) or Moore (Uniform) shell on
/// square and cube lattices; triangle and hexagon lattices use their own
/// edge adjacency and accept Taxicab only.
inline std::vector<Site> neighbor_list(TessellationKind kind, BoundaryKind bc, const Dims& dims, const Site& a,
                                       MetricKind metric = MetricKind::Taxicab) {
  detail::require_metric(kind, metric);
  detail::require_in_range(dims, a);
  const bool periodic = bc == BoundaryKind::Periodic;
  std::vector<std::size_t> idx;
  for (const auto& st : detail::unit_steps(kind, metric, a)) {
    Site b{a.x + st[0], a.y + st[1], a.z + st[2]};
    if (periodic) {
      b = Site{detail::wrap(b.x, dims.lx), detail::wrap(b.y, dims.ly), detail::wrap(b.z, dims.layers())};
    } else if (b.x < 1 || b.x > dims.lx || b.y < 1 || b.y > dims.ly || b.z < 1 || b.z > dims.layers()) {
      continue;
    }
    if (b == a) continue;
    idx.push_back(detail::site_index(dims, b));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<Site> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(detail::site_from_index(dims, i));
  return out;
}

/// Precomputed unit-step adjacency of a lattice, indexed canonically.
class LatticeAdjacency {
 public:
  LatticeAdjacency(TessellationKind kind, BoundaryKind bc, Dims dims, MetricKind metric = MetricKind::Taxicab)
      : dims_(dims) {
    validate_geometry(kind, dims, bc);
    const auto z = static_cast<std::size_t>(dims.site_count());
    adj_.resize(z);
    for (std::size_t i = 0; i < z; ++i)
      for (const auto& s : neighbor_list(kind, bc, dims, detail::site_from_index(dims, i), metric))
        adj_[i].push_back(static_cast<std::uint32_t>(detail::site_index(dims, s)));
  }

  std::size_t size() const { return adj_.size(); }
  const std::vector<std::uint32_t>& neighbors(std::size_t i) const { return adj_[i]; }

  /// Step distance from `source` to every site; -1 where unreachable.
  std::vector<int> distances_from(std::size_t source) const {
    std::vector<int> dist(adj_.size(), -1);
    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(source)}, next;
    dist[source] = 0;
    for (int d = 1; !frontier.empty(); ++d) {
      next.clear();
      for (auto u : frontier)
        for (auto v : adj_[u])
          if (dist[v] < 0) {
            dist[v] = d;
            next.push_back(v);
          }
      frontier.swap(next);
    }
    return dist;
  }

 private:
  Dims dims_;
  std::vector<std::vector<std::uint32_t>> adj_;
};

/// Integer distance between two sites. Square/Cube use coordinate offsets
/// (wrapped per axis when periodic); Triangle/Hexagon use the minimum number
/// of unit steps. Rectilinear metrics return the column/row offset.
inline std::int64_t pair_distance(TessellationKind kind, MetricKind metric, BoundaryKind bc, const Dims& dims,
                                  const Site& a, const Site& b) {
  validate_geometry(kind, dims, bc);
  detail::require_in_range(dims, a);
  detail::require_in_range(dims, b);
  if (metric == MetricKind::RectilinearX || metric == MetricKind::RectilinearY) {
    if (kind != TessellationKind::Square || bc != BoundaryKind::NonPeriodic)
      throw ValidationError("rectilinear offsets are defined on non-periodic square lattices only");
    return metric == MetricKind::RectilinearX ? std::abs(a.x - b.x) : std::abs(a.y - b.y);
  }
  detail::require_metric(kind, metric);
  if (kind == TessellationKind::Square || kind == TessellationKind::Cube) {
    const auto o = detail::offsets(bc, dims, a, b);
    return metric == MetricKind::Taxicab ? o[0] + o[1] + o[2] : std::max({o[0], o[1], o[2]});
  }
  const LatticeAdjacency adj(kind, bc, dims);
  return adj.distances_from(detail::site_index(dims, a))[detail::site_index(dims, b)];
}

/// Squared Euclidean separation, per-axis wrapped under periodic BC.
inline std::int64_t squared_separation(BoundaryKind bc, const Dims& dims, const Site& a, const Site& b) {
  const auto o = detail::offsets(bc, dims, a, b);
  return std::int64_t{o[0]} * o[0] + std::int64_t{o[1]} * o[1] + std::int64_t{o[2]} * o[2];
}

/// Euclidean distance used by the annular PCF (square lattices only).
inline double annular_distance(TessellationKind kind, BoundaryKind bc, const Dims& dims, const Site& a,
                               const Site& b) {
  if (kind != TessellationKind::Square) throw ValidationError("annular distance is defined on square lattices only");
  detail::require_in_range(dims, a);
  detail::require_in_range(dims, b);
  return std::sqrt(static_cast<double>(squared_separation(bc, dims, a, b)));
}

/// Annular bin k covers (k*delta - delta, k*delta]. Uses exact integer squared
/// distances against squared bin edges.
inline std::int64_t annular_bin(std::int64_t squared, double delta) {
  if (squared == 0) return 0;
  auto k = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(squared)) / delta));
  auto edge2 = [delta](std::int64_t j) { return (static_cast<double>(j) * delta) * (static_cast<double>(j) * delta); };
  while (k > 1 && edge2(k - 1) >= static_cast<double>(squared)) --k;
  while (edge2(k) < static_cast<double>(squared)) ++k;
  return k;
}

namespace detail {

/// Agent-pair histogram over per-axis offsets (wrapped when periodic) on a
/// square or cube grid. Shape is (ox+1) x (oy+1) x (oz+1), x fastest.
struct SeparationHistogram {
  int ox = 0, oy = 0, oz = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(int dx, int dy, int dz) const {
    return counts[static_cast<std::size_t>(dx) +
                  static_cast<std::size_t>(ox + 1) * (static_cast<std::size_t>(dy) +
                                                      static_cast<std::size_t>(oy + 1) * dz)];
  }
};

inline SeparationHistogram separation_histogram(const OccupancyGrid& grid) {
  const auto& d = grid.dims();
  const bool p = grid.bc() == BoundaryKind::Periodic;
  SeparationHistogram h;
  h.ox = p ? d.lx / 2 : d.lx - 1;
  h.oy = p ? d.ly / 2 : d.ly - 1;
  h.oz = p ? d.layers() / 2 : d.layers() - 1;
  h.counts.assign(static_cast<std::size_t>(h.ox + 1) * (h.oy + 1) * (h.oz + 1), 0);
  const auto sites = agents(grid);
  const int lx = d.lx, ly = d.ly, lz = d.layers();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const Site a = sites[i];
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      const Site& b = sites[j];
      const int dx = axis_offset(a.x, b.x, lx, p);
      const int dy = axis_offset(a.y, b.y, ly, p);
      const int dz = axis_offset(a.z, b.z, lz, p);
      ++h.counts[static_cast<std::size_t>(dx) +
                 static_cast<std::size_t>(h.ox + 1) *
                     (static_cast<std::size_t>(dy) + static_cast<std::size_t>(h.oy + 1) * dz)];
    }
  }
  return h;
}

inline PairCounts fold_histogram(const SeparationHistogram& h, MetricKind metric) {
  PairCounts out;
  for (int dz = 0; dz <= h.oz; ++dz)
    for (int dy = 0; dy <= h.oy; ++dy)
      for (int dx = 0; dx <= h.ox; ++dx) {
        const auto n = h.at(dx, dy, dz);
        if (!n) continue;
        const int m = metric == MetricKind::Taxicab ? dx + dy + dz : std::max({dx, dy, dz});
        out.add(m, n);
      }
  return out;
}

inline PairCounts step_pair_counts(const OccupancyGrid& grid) {
  const LatticeAdjacency adj(grid.kind(), grid.bc(), grid.dims());
  const auto idx = grid.agent_indices();
  PairCounts out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto dist = adj.distances_from(idx[i]);
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (dist[idx[j]] < 0)
        ++out.unreachable;
      else
        out.add(dist[idx[j]]);
    }
  }
  return out;
}

}  // namespace detail

/// Unordered agent pairs at each distance over the full reachable range.
inline PairCounts count_agent_pairs(const OccupancyGrid& grid, MetricKind metric) {
  detail::require_metric(grid.kind(), metric);
  if (grid.kind() == TessellationKind::Triangle || grid.kind() == TessellationKind::Hexagon)
    return detail::step_pair_counts(grid);
  return detail::fold_histogram(detail::separation_histogram(grid), metric);
}

/// Neighbourhood walk: for each agent visit every site within `m_max` and
/// count occupied ones. Needs periodic square/cube grids with m_max no larger
/// than min floor((L-1)/2), so that every offset maps to a distinct site.
inline PairCounts count_agent_pairs_walk(const OccupancyGrid& grid, MetricKind metric, int m_max) {
  detail::require_metric(grid.kind(), metric);
  const auto& d = grid.dims();
  const bool cube = grid.kind() == TessellationKind::Cube;
  if (grid.bc() != BoundaryKind::Periodic || !(grid.kind() == TessellationKind::Square || cube))
    throw ValidationError("neighbourhood walk needs a periodic square or cube grid");
  int cap = std::min((d.lx - 1) / 2, (d.ly - 1) / 2);
  if (cube) cap = std::min(cap, (d.layers() - 1) / 2);
  if (m_max < 1 || m_max > cap) throw ValidationError("neighbourhood walk radius out of range");
  const int zr = cube ? m_max : 0;
  std::vector<std::uint64_t> ordered(static_cast<std::size_t>(metric == MetricKind::Taxicab ? m_max * (cube ? 3 : 2) : m_max) + 1, 0);
  for (const auto& a : agents(grid)) {
    for (int dz = -zr; dz <= zr; ++dz)
      for (int dy = -m_max; dy <= m_max; ++dy)
        for (int dx = -m_max; dx <= m_max; ++dx) {
          const int m = metric == MetricKind::Taxicab ? std::abs(dx) + std::abs(dy) + std::abs(dz)
                                                      : std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
          if (m == 0 || m > m_max) continue;
          const Site b{detail::wrap(a.x + dx, d.lx), detail::wrap(a.y + dy, d.ly), detail::wrap(a.z + dz, d.layers())};
          if (grid.occupied(b)) ++ordered[m];
        }
  }
  PairCounts out;
  for (int m = 1; m <= m_max; ++m) out.add(m, ordered[m] / 2);
  return out;
}

/// Counts truncated to distances <= m_max, choosing the cheaper algorithm.
inline PairCounts count_agent_pairs_within(const OccupancyGrid& grid, MetricKind metric, int m_max) {
  detail::require_metric(grid.kind(), metric);
  const auto& d = grid.dims();
  const bool cube = grid.kind() == TessellationKind::Cube;
  if (grid.bc() == BoundaryKind::Periodic && (grid.kind() == TessellationKind::Square || cube)) {
    int cap = std::min((d.lx - 1) / 2, (d.ly - 1) / 2);
    if (cube) cap = std::min(cap, (d.layers() - 1) / 2);
    const double box = std::pow(2.0 * m_max + 1.0, cube ? 3 : 2);
    const double n = static_cast<double>(grid.agent_count());
    if (m_max >= 1 && m_max <= cap && box < n / 2.0) return count_agent_pairs_walk(grid, metric, m_max);
  }
  auto counts = count_agent_pairs(grid, metric);
  counts.truncate(m_max);
  return counts;
}

/// Agent pairs binned by Euclidean separation into (k*delta - delta, k*delta].
/// Bin index 0 is never used.
inline PairCounts annular_bin_counts(const OccupancyGrid& grid, double delta) {
  if (grid.kind() != TessellationKind::Square) throw ValidationError("annular counts need a square lattice");
  if (!(delta > 0.0)) throw ValidationError("annular bandwidth must be positive");
  const auto h = detail::separation_histogram(grid);
  PairCounts out;
  for (int dy = 0; dy <= h.oy; ++dy)
    for (int dx = 0; dx <= h.ox; ++dx) {
      const auto n = h.at(dx, dy, 0);
      if (!n) continue;
      out.add(annular_bin(std::int64_t{dx} * dx + std::int64_t{dy} * dy, delta), n);
    }
  return out;
}

/// Column-offset and row-offset pair counts; offset 0 is excluded.
inline std::pair<PairCounts, PairCounts> rectilinear_counts(const OccupancyGrid& grid) {
  if (grid.kind() != TessellationKind::Square || grid.bc() != BoundaryKind::NonPeriodic)
    throw ValidationError("rectilinear counts need a non-periodic square lattice");
  const auto& d = grid.dims();
  std::vector<std::uint64_t> cols(d.lx + 1, 0), rows(d.ly + 1, 0);
  for (const auto& s : agents(grid)) {
    ++cols[s.x];
    ++rows[s.y];
  }
  PairCounts cx, cy;
  for (int m = 1; m < d.lx; ++m) {
    std::uint64_t n = 0;
    for (int x = 1; x + m <= d.lx; ++x) n += cols[x] * cols[x + m];
    cx.add(m, n);
  }
  for (int m = 1; m < d.ly; ++m) {
    std::uint64_t n = 0;
    for (int y = 1; y + m <= d.ly; ++y) n += rows[y] * rows[y + m];
    cy.add(m, n);
  }
  return {cx, cy};
}

}  // namespace latpcf
