#pragma once

// Regular lattices with exclusion occupancy.
//
// Sites use 1-based coordinates (x, y[, z]) with x in [1, Lx], y in [1, Ly].
// Layouts for the non-square 2D tessellations:
//   Triangle  - triangle (x, y) points up iff x + y is even. Up triangles
//               touch (x-1,y), (x+1,y), (x,y-1); down triangles touch
//               (x-1,y), (x+1,y), (x,y+1).
//   Hexagon   - Lx columns of Ly cells, odd columns shifted half a cell
//               towards y-1. Same-column neighbours are (x,y+-1); an odd
//               column touches (x+-1,y-1) and (x+-1,y), an even column
//               touches (x+-1,y) and (x+-1,y+1).

#include "latpcf/error.hpp"
#include "latpcf/kinds.hpp"
#include "latpcf/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace latpcf {

struct Dims {
  int lx = 0;
  int ly = 0;
  std::optional<int> lz;  // present only for Cube

  int layers() const { return lz.value_or(1); }
  std::int64_t site_count() const {
    return static_cast<std::int64_t>(lx) * ly * layers();
  }
  std::string to_string() const {
    std::string s = std::to_string(lx) + "x" + std::to_string(ly);
    if (lz) s += "x" + std::to_string(*lz);
    return s;
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

inline Dims dims2(int lx, int ly) { return Dims{lx, ly, std::nullopt}; }
inline Dims dims3(int lx, int ly, int lz) { return Dims{lx, ly, lz}; }

struct Site {
  int x = 1;
  int y = 1;
  int z = 1;
  friend bool operator==(const Site&, const Site&) = default;
};

struct DistanceDomain {
  int m_min = 1;
  int m_max = 0;

  int size() const { return m_max - m_min + 1; }
  bool contains(int m) const { return m >= m_min && m <= m_max; }
  friend bool operator==(const DistanceDomain&, const DistanceDomain&) = default;
};

/// Throws unless (kind, dims, bc) describe a constructible lattice.
inline void validate_geometry(TessellationKind kind, const Dims& dims, BoundaryKind bc) {
  if (is_three_dimensional(kind) != dims.lz.has_value()) {
    throw ValidationError(is_three_dimensional(kind) ? "cube lattice needs Lz"
                                                     : "Lz is only valid for cube lattices");
  }
  if (dims.lx < 2 || dims.ly < 2 || (dims.lz && *dims.lz < 2)) {
    throw ValidationError("every lattice extent must be at least 2, got " + dims.to_string());
  }
  if (bc == BoundaryKind::Periodic) {
    if ((kind == TessellationKind::Triangle || kind == TessellationKind::Hexagon) && dims.lx % 2 != 0) {
      throw ValidationError("periodic " + std::string(to_string(kind)) + " lattice needs even Lx, got " +
                            dims.to_string());
    }
    if (kind == TessellationKind::Triangle && dims.ly % 2 != 0) {
      throw ValidationError("periodic triangle lattice needs even Ly, got " + dims.to_string());
    }
  }
}

/// Binary occupancy of a regular lattice; at most one agent per site.
class OccupancyGrid {
 public:
  OccupancyGrid(TessellationKind kind, Dims dims, BoundaryKind bc)
      : kind_(kind), dims_(dims), bc_(bc) {
    validate_geometry(kind, dims, bc);
    cells_.assign(static_cast<std::size_t>(dims.site_count()), 0);
  }

  TessellationKind kind() const { return kind_; }
  const Dims& dims() const { return dims_; }
  BoundaryKind bc() const { return bc_; }
  std::int64_t site_count() const { return dims_.site_count(); }
  std::int64_t agent_count() const { return agents_; }

  bool in_range(const Site& s) const {
    return s.x >= 1 && s.x <= dims_.lx && s.y >= 1 && s.y <= dims_.ly && s.z >= 1 &&
           s.z <= dims_.layers();
  }

  /// Canonical index: x fastest, then y, then z.
  std::size_t index(const Site& s) const {
    if (!in_range(s)) {
      throw ValidationError("site (" + std::to_string(s.x) + "," + std::to_string(s.y) + "," +
                            std::to_string(s.z) + ") outside " + dims_.to_string());
    }
    return static_cast<std::size_t>(s.x - 1) +
           static_cast<std::size_t>(dims_.lx) *
               (static_cast<std::size_t>(s.y - 1) + static_cast<std::size_t>(dims_.ly) * (s.z - 1));
  }

  Site site_at(std::size_t i) const {
    const auto lx = static_cast<std::size_t>(dims_.lx);
    const auto ly = static_cast<std::size_t>(dims_.ly);
    return Site{static_cast<int>(i % lx) + 1, static_cast<int>((i / lx) % ly) + 1,
                static_cast<int>(i / (lx * ly)) + 1};
  }

  bool occupied(const Site& s) const { return cells_[index(s)] != 0; }
  bool occupied_index(std::size_t i) const { return cells_[i] != 0; }

  void set(const Site& s, bool value) { set_index(index(s), value); }
  void set_index(std::size_t i, bool value) {
    const bool was = cells_[i] != 0;
    if (was == value) return;
    cells_[i] = value ? 1 : 0;
    agents_ += value ? 1 : -1;
  }

  /// Occupied indices in canonical order.
  std::vector<std::size_t> agent_indices() const {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(agents_));
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i]) out.push_back(i);
    return out;
  }

  /// Same geometry and occupancy, relabelled with another boundary condition.
  OccupancyGrid with_boundary(BoundaryKind bc) const {
    OccupancyGrid g(kind_, dims_, bc);
    g.cells_ = cells_;
    g.agents_ = agents_;
    return g;
  }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  TessellationKind kind_;
  Dims dims_;
  BoundaryKind bc_;
  std::vector<std::uint8_t> cells_;
  std::int64_t agents_ = 0;
};

inline OccupancyGrid make_grid(TessellationKind kind, Dims dims, BoundaryKind bc) {
  return OccupancyGrid(kind, dims, bc);
}

/// Returns a copy with the listed sites occupied. Repeated sites are harmless.
inline OccupancyGrid occupy(OccupancyGrid grid, std::span<const Site> sites) {
  for (const auto& s : sites) grid.set(s, true);
  return grid;
}

/// Occupied sites in canonical order (row-major within a layer, then layer).
inline std::vector<Site> agents(const OccupancyGrid& grid) {
  std::vector<Site> out;
  for (auto i : grid.agent_indices()) out.push_back(grid.site_at(i));
  return out;
}

inline Rational density(const OccupancyGrid& grid) {
  return Rational(BigInt(grid.agent_count()), BigInt(grid.site_count()));
}

/// Largest pair distance at which the closed-form site-pair counts are exact.
/// Periodic caps stop one short of L/2 for even L: at m = L/2 both wrap
/// directions land on the same site and the ring is smaller than t(m).
inline DistanceDomain distance_domain(TessellationKind kind, MetricKind metric, BoundaryKind bc,
                                      const Dims& dims) {
  validate_geometry(kind, dims, bc);
  const bool periodic = bc == BoundaryKind::Periodic;
  const int lx = dims.lx, ly = dims.ly, lz = dims.layers();
  int m_max = 0;
  switch (kind) {
    case TessellationKind::Square:
    case TessellationKind::Cube: {
      if (metric == MetricKind::RectilinearX || metric == MetricKind::RectilinearY) {
        if (kind != TessellationKind::Square || periodic)
          throw ValidationError("rectilinear distances need a non-periodic square lattice");
      } else if (metric != MetricKind::Taxicab && metric != MetricKind::Uniform) {
        throw ValidationError(std::string(to_string(metric)) + " has no analytic domain on " +
                              std::string(to_string(kind)) + " lattices");
      }
      const bool cube = kind == TessellationKind::Cube;
      if (periodic) {
        m_max = std::min((lx - 1) / 2, (ly - 1) / 2);
        if (cube) m_max = std::min(m_max, (lz - 1) / 2);
      } else {
        m_max = std::min(lx, ly) - 1;
        if (cube) m_max = std::min(m_max, lz - 1);
      }
      break;
    }
    case TessellationKind::Triangle:
    case TessellationKind::Hexagon: {
      if (metric != MetricKind::Taxicab)
        throw ValidationError(std::string(to_string(kind)) + " lattices support the taxicab (step) metric only");
      if (kind == TessellationKind::Triangle) {
        if (periodic) {
          m_max = std::min(lx / 2 - 1, ly - 1);
        } else {
          if (lx % 2 != 0 && ly % 2 == 0)
            throw ValidationError("no closed form for non-periodic triangle lattices with odd Lx and even Ly (" +
                                  dims.to_string() + "); use the graph route");
          m_max = std::min(lx, 2 * ly);
        }
      } else {
        m_max = periodic ? std::min((lx - 1) / 2, (ly - 1) / 2) : std::min(lx, ly);
      }
      break;
    }
  }
  if (m_max < 1) {
    throw ValidationError("empty distance domain for " + std::string(to_string(kind)) + " " +
                          std::string(to_string(bc)) + " " + dims.to_string());
  }
  return DistanceDomain{1, m_max};
}

}  // namespace latpcf
