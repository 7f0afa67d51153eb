#pragma once

// Seeded and deterministic occupancy generators.

#include "latpcf/graph.hpp"
#include "latpcf/lattice.hpp"
#include "latpcf/metric.hpp"
#include "latpcf/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <variant>
#include <vector>

namespace latpcf {

/// round(density * Z), halves rounded up.
inline std::int64_t agents_for_density(const Rational& density, std::int64_t z) {
  if (density < 0 || density > 1) throw ValidationError("density must lie in [0, 1]");
  const Rational target = density * z;
  const BigInt twice = numerator(target) * 2 + denominator(target);
  return static_cast<std::int64_t>(BigInt(twice / (denominator(target) * 2)));
}

/// Exactly round(density * Z) sites chosen by a partial Fisher-Yates shuffle
/// of the canonical site order.
inline OccupancyGrid gen_uniform_random(TessellationKind kind, const Dims& dims, BoundaryKind bc,
                                        const Rational& density, Seed seed) {
  OccupancyGrid grid(kind, dims, bc);
  const auto z = static_cast<std::size_t>(grid.site_count());
  const auto n = static_cast<std::size_t>(agents_for_density(density, grid.site_count()));
  std::vector<std::size_t> order(z);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(z - i));
    std::swap(order[i], order[j]);
    grid.set_index(order[i], true);
  }
  return grid;
}

struct Chessboard {};
struct DiagonalStripes {
  int width = 1;
};
struct ConcentricCircles {
  double spacing = 1.0;
};
using DeterministicPattern = std::variant<Chessboard, DiagonalStripes, ConcentricCircles>;

inline OccupancyGrid gen_deterministic_pattern(const DeterministicPattern& pattern, const Dims& dims,
                                               BoundaryKind bc = BoundaryKind::Periodic) {
  OccupancyGrid grid(TessellationKind::Square, dims, bc);
  std::function<bool(int, int)> rule;
  if (std::holds_alternative<Chessboard>(pattern)) {
    if (dims.lx % 2 || dims.ly % 2) throw ValidationError("chessboard needs even extents, got " + dims.to_string());
    rule = [](int x, int y) { return (x + y) % 2 == 0; };
  } else if (const auto* s = std::get_if<DiagonalStripes>(&pattern)) {
    const int w = s->width;
    if (w < 1) throw ValidationError("stripe width must be at least 1");
    rule = [w](int x, int y) { return ((x + y) % (2 * w)) / w == 0; };
  } else {
    const double sp = std::get<ConcentricCircles>(pattern).spacing;
    if (!(sp > 0.0)) throw ValidationError("circle spacing must be positive");
    const double cx = (dims.lx + 1) / 2.0, cy = (dims.ly + 1) / 2.0;
    rule = [=](int x, int y) {
      const auto ring = static_cast<long long>(std::floor(std::hypot(x - cx, y - cy) / sp));
      return ring % 2 == 0;
    };
  }
  for (int y = 1; y <= dims.ly; ++y)
    for (int x = 1; x <= dims.lx; ++x)
      if (rule(x, y)) grid.set(Site{x, y}, true);
  return grid;
}

/// Proliferation on a periodic square lattice. Each step makes n(t)
/// attempts; an attempt picks one of the n(t) agents present at the start of
/// the step and one of its four neighbours, and fills that site if empty.
inline OccupancyGrid gen_proliferation(int steps, Seed seed, const Dims& dims = dims2(100, 100)) {
  if (steps < 0) throw ValidationError("steps must be non-negative");
  if (dims.lz || dims.lx < 80 || dims.ly < 80)
    throw ValidationError("proliferation seeds agents at 20..80 and needs a 2D grid of at least 80x80");
  OccupancyGrid grid(TessellationKind::Square, dims, BoundaryKind::Periodic);
  std::vector<Site> agents_in_order;
  for (int y : {20, 40, 60, 80})
    for (int x : {20, 40, 60, 80}) {
      grid.set(Site{x, y}, true);
      agents_in_order.push_back(Site{x, y});
    }
  static constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  Rng rng(seed);
  for (int t = 0; t < steps; ++t) {
    const auto n = agents_in_order.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Site a = agents_in_order[rng.below(n)];
      const auto& d = kSteps[rng.below(4)];
      const Site b{detail::wrap(a.x + d[0], dims.lx), detail::wrap(a.y + d[1], dims.ly)};
      if (!grid.occupied(b)) {
        grid.set(b, true);
        agents_in_order.push_back(b);
      }
    }
  }
  return grid;
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct VoronoiLattice {
  GeneralLattice lattice;
  std::vector<Point2> points;  // vertex v sits at column v % nx, row v / nx
  int attempts = 1;            // > 1 when coincident points forced a re-draw
  Seed seed_used = 0;
};

namespace detail {

struct LabeledVertex {
  Point2 p;
  int edge = -1;  // neighbour owning the edge from this vertex to the next; -1 = box
};

/// Keeps the part of `poly` where (q - mid) . dir <= 0, labelling new edges.
inline std::vector<LabeledVertex> clip(const std::vector<LabeledVertex>& poly, Point2 mid, Point2 dir, int label) {
  auto side = [&](Point2 q) { return (q.x - mid.x) * dir.x + (q.y - mid.y) * dir.y; };
  std::vector<LabeledVertex> out;
  const auto n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = poly[k];
    const auto& b = poly[(k + 1) % n];
    const double sa = side(a.p), sb = side(b.p);
    const bool ina = sa <= 0.0, inb = sb <= 0.0;
    auto cross = [&] {
      const double t = sa / (sa - sb);
      return Point2{a.p.x + t * (b.p.x - a.p.x), a.p.y + t * (b.p.y - a.p.y)};
    };
    if (ina) out.push_back(a);
    if (ina && !inb) out.push_back({cross(), label});
    if (!ina && inb) out.push_back({cross(), a.edge});
  }
  return out;
}

}  // namespace detail

/// Irregular lattice from the Voronoi partition of a perturbed nx x ny grid of
/// unit spacing; each coordinate moves by U[-delta/2, delta/2]. Cells sharing
/// an edge of positive length are adjacent. Cells are built by clipping the
/// domain box with perpendicular bisectors of nearby points.
inline VoronoiLattice gen_voronoi_lattice(int nx, int ny, double delta, Seed seed) {
  if (nx < 3 || ny < 3) throw ValidationError("Voronoi lattice needs at least 3x3 points");
  if (!(delta >= 0.0)) throw ValidationError("perturbation must be non-negative");
  const auto z = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  const double h = 0.5 + delta / 2.0;
  VoronoiLattice out;
  for (int attempt = 1;; ++attempt) {
    out.seed_used = seed + static_cast<Seed>(attempt - 1);
    out.attempts = attempt;
    Rng rng(out.seed_used);
    out.points.assign(z, {});
    for (std::size_t v = 0; v < z; ++v) {
      const double px = static_cast<double>(v % nx), py = static_cast<double>(v / nx);
      const double dx = rng.uniform(-delta / 2.0, delta / 2.0);
      const double dy = rng.uniform(-delta / 2.0, delta / 2.0);
      out.points[v] = {px + dx, py + dy};
    }
    auto sorted = out.points;
    std::sort(sorted.begin(), sorted.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    const bool coincident = std::adjacent_find(sorted.begin(), sorted.end(), [](Point2 a, Point2 b) {
                              return a.x == b.x && a.y == b.y;
                            }) != sorted.end();
    if (!coincident) break;
    if (attempt >= 64) throw ValidationError("could not draw distinct Voronoi points");
  }

  const auto& pts = out.points;
  const double x0 = -h, x1 = nx - 1 + h, y0 = -h, y1 = ny - 1 + h;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < z; ++i) {
    const int ci = static_cast<int>(i % nx), ri = static_cast<int>(i / nx);
    const Point2 p = pts[i];
    std::vector<detail::LabeledVertex> cell{{{x0, y0}, -1}, {{x1, y0}, -1}, {{x1, y1}, -1}, {{x0, y1}, -1}};
    auto radius = [&] {
      double r2 = 0.0;
      for (const auto& v : cell) r2 = std::max(r2, (v.p.x - p.x) * (v.p.x - p.x) + (v.p.y - p.y) * (v.p.y - p.y));
      return std::sqrt(r2);
    };
    // Points on Chebyshev ring r of the index grid are at least r - delta away.
    for (int r = 1; r <= std::max(nx, ny); ++r) {
      if (r - delta > 2.0 * radius()) break;
      for (int rr = ri - r; rr <= ri + r; ++rr) {
        if (rr < 0 || rr >= ny) continue;
        const int step = (rr == ri - r || rr == ri + r) ? 1 : 2 * r;
        for (int cc = ci - r; cc <= ci + r; cc += step) {
          if (cc < 0 || cc >= nx) continue;
          const auto j = static_cast<std::size_t>(rr) * nx + cc;
          const Point2 q = pts[j];
          cell = detail::clip(cell, {(p.x + q.x) / 2, (p.y + q.y) / 2}, {q.x - p.x, q.y - p.y}, static_cast<int>(j));
        }
      }
    }
    for (std::size_t k = 0; k < cell.size(); ++k) {
      const auto& a = cell[k];
      const auto& b = cell[(k + 1) % cell.size()];
      if (a.edge < 0) continue;
      if (std::hypot(b.p.x - a.p.x, b.p.y - a.p.y) > 1e-9) {
        const auto j = static_cast<std::uint32_t>(a.edge);
        edges.emplace_back(std::min<std::uint32_t>(i, j), std::max<std::uint32_t>(i, j));
      }
    }
  }
  out.lattice = GeneralLattice(z, edges);
  return out;
}

struct ProcessResult {
  GeneralLattice lattice;
  Rational achieved;
  std::int64_t iterations = 0;
  bool reached = true;
};

/// From empty: pick an empty vertex uniformly, fill it and its neighbours,
/// until the density first reaches the target.
inline ProcessResult gen_aggregated(GeneralLattice lattice, const Rational& target, Seed seed) {
  if (target <= 0 || target > 1) throw ValidationError("aggregation target density must lie in (0, 1]");
  lattice.clear_occupancy();
  Rng rng(seed);
  ProcessResult res;
  std::vector<std::uint32_t> empty;
  while (lattice.density() < target) {
    empty.clear();
    for (std::uint32_t v = 0; v < lattice.size(); ++v)
      if (!lattice.occupied(v)) empty.push_back(v);
    const auto v = empty[rng.below(empty.size())];
    lattice.set_occupied(v, true);
    for (auto u : lattice.neighbors(v)) lattice.set_occupied(u, true);
    ++res.iterations;
  }
  res.achieved = lattice.density();
  res.lattice = std::move(lattice);
  return res;
}

/// From full: pick an occupied vertex with an occupied neighbour uniformly and
/// clear all its neighbours, until the density first drops to the target.
/// Stops early, with reached=false, once no vertex has an occupied neighbour.
inline ProcessResult gen_segregated(GeneralLattice lattice, const Rational& target, Seed seed) {
  if (target <= 0 || target >= 1) throw ValidationError("segregation target density must lie in (0, 1)");
  lattice.clear_occupancy();
  for (std::size_t v = 0; v < lattice.size(); ++v) lattice.set_occupied(v, true);
  Rng rng(seed);
  ProcessResult res;
  std::vector<std::uint32_t> eligible;
  while (lattice.density() > target) {
    eligible.clear();
    for (std::uint32_t v = 0; v < lattice.size(); ++v) {
      if (!lattice.occupied(v)) continue;
      const auto& nb = lattice.neighbors(v);
      if (std::any_of(nb.begin(), nb.end(), [&](std::uint32_t u) { return lattice.occupied(u); }))
        eligible.push_back(v);
    }
    if (eligible.empty()) {
      res.reached = false;
      break;
    }
    const auto v = eligible[rng.below(eligible.size())];
    for (auto u : lattice.neighbors(v)) lattice.set_occupied(u, false);
    ++res.iterations;
  }
  res.achieved = lattice.density();
  res.lattice = std::move(lattice);
  return res;
}

}  // namespace latpcf
