#pragma once

// Closed-form counts of unordered site pairs at distance m, and the expected
// agent-pair counts built on them.

#include "latpcf/lattice.hpp"
#include "latpcf/rational.hpp"

#include <cstdint>
#include <numbers>
#include <string>

namespace latpcf {

enum class Axis { X, Y };

namespace detail {

using wide = __int128;

inline wide floor_div(wide a, wide b) {
  wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t exact_div(wide num, wide den, const char* what) {
  if (num % den != 0) throw std::logic_error(std::string("non-integral site-pair count in ") + what);
  return static_cast<std::int64_t>(num / den);
}

inline std::int64_t square_pairs(MetricKind metric, bool periodic, wide m, wide lx, wide ly) {
  if (metric == MetricKind::Taxicab) {
    if (periodic) return static_cast<std::int64_t>(2 * m * lx * ly);
    // 3s = 6mLxLy - 3(Lx+Ly)m^2 + m^3 - m
    return exact_div(6 * m * lx * ly - 3 * (lx + ly) * m * m + m * m * m - m, 3, "square taxicab");
  }
  if (periodic) return static_cast<std::int64_t>(4 * m * lx * ly);
  return static_cast<std::int64_t>(4 * m * lx * ly - 3 * (lx + ly) * m * m + 2 * m * m * m);
}

inline std::int64_t cube_pairs(MetricKind metric, bool periodic, wide m, wide lx, wide ly, wide lz) {
  const wide v = lx * ly * lz, p = lx * ly + ly * lz + lz * lx, s = lx + ly + lz;
  const wide m2 = m * m, m3 = m2 * m;
  if (metric == MetricKind::Taxicab) {
    if (periodic) return static_cast<std::int64_t>((2 * m2 + 1) * v);
    // 30s = 30(2m^2+1)V - 10(2m^3+m)P + 5m^2(m^2-1)S - m^5 + 5m^3 - 4m
    return exact_div(30 * (2 * m2 + 1) * v - 10 * (2 * m3 + m) * p + 5 * m2 * (m2 - 1) * s - m3 * m2 + 5 * m3 - 4 * m,
                     30, "cube taxicab");
  }
  if (periodic) return static_cast<std::int64_t>((12 * m2 + 1) * v);
  return static_cast<std::int64_t>((12 * m2 + 1) * v - m * (8 * m2 + 1) * p + m2 * (5 * m2 + 1) * s -
                                   m3 * (3 * m2 + 1));
}

inline std::int64_t triangle_pairs(bool periodic, wide m, wide lx, wide ly) {
  if (periodic) return exact_div(3 * m * lx * ly, 2, "periodic triangle");
  if (m == 1) return exact_div(3 * lx * ly - lx - 2 * ly, 2, "triangle");
  if (m == 2) return static_cast<std::int64_t>(3 * lx * ly - 2 * lx - 4 * ly + 2);
  const wide k3 = floor_div(m - 3, 4), k6 = floor_div(m - 6, 4), k7 = floor_div(m - 7, 4);
  // 6s, term by term
  const wide six_s = 9 * m * lx * ly - 3 * lx * m * m +
                     6 * ly * (2 * k6 * (k6 - 2 * k3 + 1) + k3 * (m - 6) - m * m + m - 2) +
                     2 * (m - 1) * (m * m - 2 * m + 6) - 2 * (k7 + 1) * (20 * k7 * k7 + 37 * k7 + 12) -
                     6 * (m - 7 - 4 * k7) * (k7 + 1) * (m + k7 - 2);
  return exact_div(six_s, 6, "triangle");
}

inline std::int64_t hexagon_pairs(bool periodic, wide m, wide lx, wide ly) {
  if (periodic) return static_cast<std::int64_t>(3 * m * lx * ly);
  const wide k = m % 2;
  // 12s = 36mLxLy - 3(7m^2+k)Lx - 24m^2Ly + 11m^3 - (2-3k)m
  return exact_div(36 * m * lx * ly - 3 * (7 * m * m + k) * lx - 24 * m * m * ly + 11 * m * m * m - (2 - 3 * k) * m,
                   12, "hexagon");
}

}  // namespace detail

/// Number of unordered site pairs at distance m. Only defined inside
/// distance_domain, where the closed forms are exact.
inline std::int64_t site_pairs_analytic(TessellationKind kind, MetricKind metric, BoundaryKind bc, const Dims& dims,
                                        int m) {
  const auto domain = distance_domain(kind, metric, bc, dims);
  if (metric == MetricKind::RectilinearX || metric == MetricKind::RectilinearY)
    throw ValidationError("rectilinear pairs are normalised by expected_rectilinear");
  if (!domain.contains(m))
    throw ValidationError("m=" + std::to_string(m) + " outside distance domain 1.." + std::to_string(domain.m_max) +
                          " for " + std::string(to_string(kind)) + " " + std::string(to_string(bc)) + " " +
                          dims.to_string());
  const bool periodic = bc == BoundaryKind::Periodic;
  switch (kind) {
    case TessellationKind::Square: return detail::square_pairs(metric, periodic, m, dims.lx, dims.ly);
    case TessellationKind::Cube: return detail::cube_pairs(metric, periodic, m, dims.lx, dims.ly, dims.layers());
    case TessellationKind::Triangle: return detail::triangle_pairs(periodic, m, dims.lx, dims.ly);
    case TessellationKind::Hexagon: return detail::hexagon_pairs(periodic, m, dims.lx, dims.ly);
  }
  throw ValidationError("unsupported tessellation");
}

/// (N/Z)((N-1)/(Z-1)) s, exactly.
inline Rational expected_pairs(std::int64_t n, std::int64_t z, std::int64_t s) {
  if (z < 2) throw ValidationError("expected pairs need at least two sites");
  if (n < 0 || n > z) throw ValidationError("agent count " + std::to_string(n) + " outside 0.." + std::to_string(z));
  if (s < 0) throw ValidationError("negative site-pair count");
  return Rational(BigInt(n) * BigInt(n - 1) * BigInt(s), BigInt(z) * BigInt(z - 1));
}

/// Expected agent pairs whose column (X) or row (Y) offset is m on a
/// non-periodic square lattice. The site-pair factor L_other^2 (L_axis - m)
/// already counts unordered pairs.
inline Rational expected_rectilinear(int m, Axis axis, std::int64_t n, const Dims& dims) {
  if (dims.lz) throw ValidationError("rectilinear expectation is two-dimensional");
  const std::int64_t along = axis == Axis::X ? dims.lx : dims.ly;
  const std::int64_t across = axis == Axis::X ? dims.ly : dims.lx;
  if (m < 1 || m > along - 1)
    throw ValidationError("rectilinear offset " + std::to_string(m) + " outside 1.." + std::to_string(along - 1));
  return expected_pairs(n, dims.site_count(), across * across * (along - m));
}

/// Annulus-area approximation N(N-1) pi m delta / Z for bin m (unordered).
/// Deliberately approximate: lattice distances are not spread evenly.
inline double expected_annular(int m_bin, double delta, std::int64_t n, const Dims& dims) {
  if (!(delta > 0.0)) throw ValidationError("annular bandwidth must be positive");
  if (m_bin < 1) throw ValidationError("annular bin index must be positive");
  if (dims.lz) throw ValidationError("annular expectation is two-dimensional");
  if (n < 2) return 0.0;
  return static_cast<double>(n) * static_cast<double>(n - 1) * std::numbers::pi * m_bin * delta /
         static_cast<double>(dims.site_count());
}

}  // namespace latpcf
