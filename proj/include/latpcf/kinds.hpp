#pragma once

#include "latpcf/error.hpp"

#include <string>
#include <string_view>

namespace latpcf {

enum class TessellationKind { Square, Triangle, Hexagon, Cube };

enum class BoundaryKind { Periodic, NonPeriodic };

enum class MetricKind { Taxicab, Uniform, Annular, RectilinearX, RectilinearY, Graph };

/// A metric choice. `bandwidth` is only meaningful for Annular.
struct Metric {
  MetricKind kind = MetricKind::Taxicab;
  double bandwidth = 0.0;

  static constexpr Metric taxicab() { return {MetricKind::Taxicab, 0.0}; }
  static constexpr Metric uniform() { return {MetricKind::Uniform, 0.0}; }
  static Metric annular(double delta) {
    if (!(delta > 0.0)) throw ValidationError("annular bandwidth must be positive");
    return {MetricKind::Annular, delta};
  }

  friend bool operator==(const Metric&, const Metric&) = default;
};

constexpr bool is_three_dimensional(TessellationKind kind) { return kind == TessellationKind::Cube; }

inline std::string_view to_string(TessellationKind kind) {
  switch (kind) {
    case TessellationKind::Square: return "square";
    case TessellationKind::Triangle: return "triangle";
    case TessellationKind::Hexagon: return "hexagon";
    case TessellationKind::Cube: return "cube";
  }
  return "?";
}

inline std::string_view to_string(BoundaryKind bc) {
  return bc == BoundaryKind::Periodic ? "periodic" : "nonperiodic";
}

inline std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Taxicab: return "taxicab";
    case MetricKind::Uniform: return "uniform";
    case MetricKind::Annular: return "annular";
    case MetricKind::RectilinearX: return "rectilinear-x";
    case MetricKind::RectilinearY: return "rectilinear-y";
    case MetricKind::Graph: return "graph";
  }
  return "?";
}

inline TessellationKind parse_tessellation(std::string_view s) {
  if (s == "square") return TessellationKind::Square;
  if (s == "triangle") return TessellationKind::Triangle;
  if (s == "hexagon") return TessellationKind::Hexagon;
  if (s == "cube") return TessellationKind::Cube;
  throw ValidationError("unknown tessellation '" + std::string(s) + "'");
}

inline BoundaryKind parse_boundary(std::string_view s) {
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "nonperiodic" || s == "non-periodic") return BoundaryKind::NonPeriodic;
  throw ValidationError("unknown boundary condition '" + std::string(s) + "'");
}

inline MetricKind parse_metric(std::string_view s) {
  if (s == "taxicab") return MetricKind::Taxicab;
  if (s == "uniform") return MetricKind::Uniform;
  if (s == "annular") return MetricKind::Annular;
  if (s == "rectilinear-x") return MetricKind::RectilinearX;
  if (s == "rectilinear-y") return MetricKind::RectilinearY;
  if (s == "graph") return MetricKind::Graph;
  throw ValidationError("unknown metric '" + std::string(s) + "'");
}

}  // namespace latpcf
