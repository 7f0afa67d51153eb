#pragma once

// Arbitrary site graphs. Vertices are 0-based here; file formats use 1-based
// ids and convert at the boundary.

#include "latpcf/metric.hpp"
#include "latpcf/pcf.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace latpcf {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

class GeneralLattice {
 public:
  GeneralLattice() = default;

  /// Builds a simple undirected graph. Duplicate edges collapse; self-loops
  /// and out-of-range endpoints are rejected.
  GeneralLattice(std::size_t z, std::span<const Edge> edges) : adj_(z), occupied_(z, 0) {
    for (const auto& [a, b] : edges) {
      if (a >= z || b >= z)
        throw ValidationError("edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") outside 1.." +
                              std::to_string(z));
      if (a == b) throw ValidationError("self-loop at vertex " + std::to_string(a + 1));
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& nb : adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }

  std::size_t size() const { return adj_.size(); }
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].size(); }
  bool adjacent(std::size_t a, std::size_t b) const {
    return std::binary_search(adj_[a].begin(), adj_[a].end(), static_cast<std::uint32_t>(b));
  }

  /// Each edge once, as (smaller, larger), sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::uint32_t a = 0; a < adj_.size(); ++a)
      for (auto b : adj_[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& nb : adj_) n += nb.size();
    return n / 2;
  }

  bool occupied(std::size_t v) const { return occupied_.at(v) != 0; }
  void set_occupied(std::size_t v, bool value) {
    if (v >= occupied_.size()) throw ValidationError("vertex " + std::to_string(v + 1) + " out of range");
    if ((occupied_[v] != 0) == value) return;
    occupied_[v] = value ? 1 : 0;
    agents_ += value ? 1 : -1;
  }
  void clear_occupancy() {
    std::fill(occupied_.begin(), occupied_.end(), 0);
    agents_ = 0;
  }
  std::int64_t agent_count() const { return agents_; }
  std::vector<std::uint32_t> occupied_vertices() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < occupied_.size(); ++v)
      if (occupied_[v]) out.push_back(v);
    return out;
  }
  Rational density() const {
    if (adj_.empty()) return Rational(0);
    return Rational(BigInt(agents_), BigInt(static_cast<std::int64_t>(adj_.size())));
  }

  friend bool operator==(const GeneralLattice&, const GeneralLattice&) = default;

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint8_t> occupied_;
  std::int64_t agents_ = 0;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::size_t kMaxMatrixVertices = 20000;

/// Shortest-path step counts from `source`; kUnreachable where disconnected.
inline std::vector<std::uint32_t> bfs_distances(const GeneralLattice& g, std::size_t source) {
  std::vector<std::uint32_t> dist(g.size(), kUnreachable);
  std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(source)}, next;
  dist[source] = 0;
  for (std::uint32_t d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (auto u : frontier)
      for (auto v : g.neighbors(u))
        if (dist[v] == kUnreachable) {
          dist[v] = d;
          next.push_back(v);
        }
    frontier.swap(next);
  }
  return dist;
}

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t z) : z_(z), d_(z * z, kUnreachable) {}

  std::size_t size() const { return z_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return d_[i * z_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t v) { d_[i * z_ + j] = v; }
  bool reachable(std::size_t i, std::size_t j) const { return at(i, j) != kUnreachable; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t z_ = 0;
  std::vector<std::uint32_t> d_;
};

inline DistanceMatrix build_distance_matrix(const GeneralLattice& g) {
  if (g.size() > kMaxMatrixVertices)
    throw ValidationError("refusing to materialise a distance matrix for Z=" + std::to_string(g.size()) +
                          "; use graph_pcf, which streams");
  DistanceMatrix d(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto row = bfs_distances(g, i);
    for (std::size_t j = 0; j < g.size(); ++j) d.set(i, j, row[j]);
  }
  return d;
}

struct GraphPairCounts {
  PairCounts agents;
  PairCounts sites;
};

inline GraphPairCounts pair_counts_from_matrix(const GeneralLattice& g, const DistanceMatrix& d) {
  if (d.size() != g.size())
    throw ValidationError("distance matrix is " + std::to_string(d.size()) + "x" + std::to_string(d.size()) +
                          " but the lattice has " + std::to_string(g.size()) + " vertices");
  GraphPairCounts out;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const auto m = d.at(i, j);
      const bool both = g.occupied(i) && g.occupied(j);
      if (m == kUnreachable) {
        ++out.sites.unreachable;
        if (both) ++out.agents.unreachable;
      } else {
        out.sites.add(m);
        if (both) out.agents.add(m);
      }
    }
  return out;
}

/// Same histograms without materialising the matrix: one BFS per source.
inline GraphPairCounts stream_pair_counts(const GeneralLattice& g) {
  GraphPairCounts out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto row = bfs_distances(g, i);
    const bool oi = g.occupied(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const bool both = oi && g.occupied(j);
      if (row[j] == kUnreachable) {
        ++out.sites.unreachable;
        if (both) ++out.agents.unreachable;
      } else {
        out.sites.add(row[j]);
        if (both) out.agents.add(row[j]);
      }
    }
  }
  return out;
}

/// General PCF over every finite distance with at least one site pair.
inline PcfProfile graph_pcf(const GeneralLattice& g) {
  const auto n = g.agent_count();
  detail::require_pairs(n);
  const auto counts = stream_pair_counts(g);
  const auto z = static_cast<std::int64_t>(g.size());
  PcfProfile prof;
  prof.meta.lattice = "graph";
  prof.meta.metric = std::string(to_string(MetricKind::Graph));
  prof.meta.dims = "Z=" + std::to_string(z);
  prof.meta.n = n;
  if (counts.agents.unreachable) prof.meta.set("unreachable_agent_pairs", std::to_string(counts.agents.unreachable));
  for (std::int64_t m = 1; m <= counts.sites.max_distance(); ++m) {
    const auto s = counts.sites.at(m);
    if (!s) continue;
    prof.points.push_back(exact_point(static_cast<int>(m), counts.agents.at(m),
                                      expected_pairs(n, z, static_cast<std::int64_t>(s))));
  }
  return prof;
}

/// Graph whose vertices are the grid sites in canonical order and whose edges
/// join distance-one neighbours under `metric`.
inline GeneralLattice grid_to_graph(TessellationKind kind, const Dims& dims, BoundaryKind bc,
                                    MetricKind metric = MetricKind::Taxicab) {
  const LatticeAdjacency adj(kind, bc, dims, metric);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < adj.size(); ++i)
    for (auto j : adj.neighbors(i))
      if (i < j) edges.emplace_back(i, j);
  return GeneralLattice(adj.size(), edges);
}

/// As above, carrying the grid's occupancy across.
inline GeneralLattice grid_to_graph(const OccupancyGrid& grid, MetricKind metric = MetricKind::Taxicab) {
  auto g = grid_to_graph(grid.kind(), grid.dims(), grid.bc(), metric);
  for (auto i : grid.agent_indices()) g.set_occupied(i, true);
  return g;
}

}  // namespace latpcf
