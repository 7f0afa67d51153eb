#pragma once

#include "latpcf/graph.hpp"
#include "latpcf/io.hpp"
#include "latpcf/oracle.hpp"
#include "latpcf/patterns.hpp"
#include "latpcf/pcf.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace latpcf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

namespace detail {

struct ComputeArgs {
  std::string input, tessellation, bc, metric = "taxicab", out;
  double bandwidth = 1.0;
  bool plot = false;
};

struct GenerateArgs {
  std::string pattern, tessellation = "square", dims = "100x100", bc = "periodic", density = "0.5", out,
                       occupied_out, edges;
  int width = 1, steps = 10;
  double spacing = 4.0, delta = 1.0;
  std::optional<Seed> seed;
};

struct GraphArgs {
  std::string edges, occupied, out;
  bool plot = false;
};

struct AverageArgs {
  std::vector<std::string> inputs;
  std::string out;
  bool plot = false;
};

struct ValidateArgs {
  int min_extent = 4, max_extent = 12, cube_max_extent = 8;
  std::string out, table;
};

struct IngestArgs {
  std::string image, out;
  int threshold = 80;
};

inline void emit_profile(const PcfProfile& p, const std::string& path, bool plot, std::ostream& out) {
  const auto mode = plot ? ProfileMode::Plot : ProfileMode::Full;
  if (path.empty())
    write_profile(p, out, mode);
  else
    write_profile(p, path, mode);
}

inline int run_compute(const ComputeArgs& a, std::ostream& out) {
  std::optional<TessellationKind> kind;
  std::optional<BoundaryKind> bc;
  if (!a.tessellation.empty()) kind = parse_tessellation(a.tessellation);
  if (!a.bc.empty()) bc = parse_boundary(a.bc);
  const auto grid = read_occupancy(a.input, kind, bc);
  PcfProfile prof;
  if (a.metric == "taxicab" || a.metric == "uniform") {
    prof = pcf_profile(grid, parse_metric(a.metric));
  } else if (a.metric == "rectilinear" || a.metric == "rectilinear-x" || a.metric == "rectilinear-y") {
    auto r = rectilinear_profile(grid);
    prof = a.metric == "rectilinear" ? r.averaged : a.metric == "rectilinear-x" ? r.x : r.y;
  } else if (a.metric == "annular") {
    prof = annular_profile(grid, a.bandwidth);
  } else {
    throw ValidationError("unknown metric '" + a.metric + "'");
  }
  prof.meta.set("input", a.input);
  emit_profile(prof, a.out, a.plot, out);
  return kExitOk;
}

inline Seed require_seed(const GenerateArgs& a) {
  if (!a.seed) throw ValidationError("pattern '" + a.pattern + "' is random and needs --seed");
  return *a.seed;
}

inline void write_tagged_occupancy(const OccupancyGrid& g, const std::string& path, const std::string& tags) {
  std::ostringstream body;
  write_occupancy(g, body);
  std::string s = body.str();
  s.insert(s.find('\n'), tags);
  auto f = open_out(path);
  f << s;
  check_written(f, path);
}

inline int run_generate(const GenerateArgs& a, std::ostream& out) {
  const auto& p = a.pattern;
  const bool graph_pattern = p == "voronoi" || p == "aggregated" || p == "segregated";
  if (graph_pattern) {
    const Seed seed = require_seed(a);
    if (a.occupied_out.empty()) throw ValidationError("pattern '" + p + "' writes a graph and needs --occupied-out");
    GeneralLattice lattice;
    std::string tags = " generator=" + p + " seed=" + std::to_string(seed);
    if (!a.edges.empty()) {
      auto e = open_in(a.edges);
      std::istringstream none;
      lattice = parse_graph(e, a.edges, none, "<none>");
    } else {
      const auto d = parse_dims(a.dims);
      if (d.lz) throw ValidationError("Voronoi lattices are two-dimensional");
      const auto v = gen_voronoi_lattice(d.lx, d.ly, a.delta, seed);
      lattice = v.lattice;
      out << "voronoi attempts=" << v.attempts << " seed_used=" << v.seed_used << '\n';
    }
    if (p != "voronoi") {
      const auto target = parse_rational(a.density);
      const auto r = p == "aggregated" ? gen_aggregated(lattice, target, seed) : gen_segregated(lattice, target, seed);
      lattice = r.lattice;
      out << p << " density=" << detail::fmt12(to_double(r.achieved)) << " iterations=" << r.iterations
          << (r.reached ? "" : " stalled-above-target") << '\n';
    }
    write_graph(lattice, a.out, a.occupied_out);
    return kExitOk;
  }
  const auto kind = parse_tessellation(a.tessellation);
  const auto bc = parse_boundary(a.bc);
  const auto dims = parse_dims(a.dims);
  OccupancyGrid grid(kind, dims, bc);
  std::string tags = " generator=" + p;
  if (p == "uniform") {
    const Seed seed = require_seed(a);
    grid = gen_uniform_random(kind, dims, bc, parse_rational(a.density), seed);
    tags += " density=" + a.density + " seed=" + std::to_string(seed);
  } else if (p == "proliferation") {
    const Seed seed = require_seed(a);
    grid = gen_proliferation(a.steps, seed, dims);
    tags += " steps=" + std::to_string(a.steps) + " seed=" + std::to_string(seed);
  } else if (p == "chessboard" || p == "stripes" || p == "circles") {
    if (kind != TessellationKind::Square) throw ValidationError("deterministic patterns are square-lattice only");
    DeterministicPattern pat = Chessboard{};
    if (p == "stripes") {
      pat = DiagonalStripes{a.width};
      tags += " width=" + std::to_string(a.width);
    } else if (p == "circles") {
      pat = ConcentricCircles{a.spacing};
      tags += " spacing=" + detail::fmt12(a.spacing);
    }
    grid = gen_deterministic_pattern(pat, dims, bc);
  } else {
    throw ValidationError("unknown pattern '" + p + "'");
  }
  write_tagged_occupancy(grid, a.out, tags);
  return kExitOk;
}

inline int run_graph(const GraphArgs& a, std::ostream& out) {
  const auto g = read_graph(a.edges, a.occupied);
  auto prof = graph_pcf(g);
  prof.meta.set("edges", a.edges);
  emit_profile(prof, a.out, a.plot, out);
  return kExitOk;
}

inline int run_average(const AverageArgs& a, std::ostream& out) {
  std::vector<PcfProfile> profiles;
  for (const auto& path : a.inputs) profiles.push_back(read_profile(path));
  auto avg = average_profiles(profiles);
  emit_profile(avg, a.out, a.plot, out);
  return kExitOk;
}

inline int run_validate(const ValidateArgs& a, std::ostream& out) {
  if (a.min_extent < 2 || a.max_extent < a.min_extent) throw ValidationError("need 2 <= --min-extent <= --max-extent");
  const Sweep sweep{a.min_extent, a.max_extent, std::min(a.cube_max_extent, a.max_extent)};
  const auto report = verify_normalization(sweep);
  if (!a.out.empty()) {
    auto f = open_out(a.out);
    write_report_csv(report, f);
    check_written(f, a.out);
  }
  if (!a.table.empty()) {
    auto f = open_out(a.table);
    write_validity_table(report, sweep, f);
    check_written(f, a.table);
  }
  out << "configurations=" << report.configurations << " rows=" << report.rows.size()
      << " skipped=" << report.skipped << " mismatches=" << report.mismatches() << '\n';
  return report.ok() ? kExitOk : kExitValidation;
}

inline int run_ingest(const IngestArgs& a) {
  const auto grid = read_image(a.image, a.threshold);
  write_tagged_occupancy(grid, a.out, " source=image threshold=" + std::to_string(a.threshold) + " rule=all-channels-strict");
  return kExitOk;
}

}  // namespace detail

/// Entry point behind the latpcf tool. `args` excludes the program name.
/// Returns 0 on success, 1 on validation or usage errors, 2 on I/O errors.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Pair correlation functions for lattice occupancy data", "latpcf"};
  app.require_subcommand(1);

  detail::ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "PCF profile of an occupancy file");
  compute->add_option("--input", ca.input, "occupancy CSV")->required();
  compute->add_option("--tessellation", ca.tessellation, "square|triangle|hexagon|cube (if not in the header)");
  compute->add_option("--bc", ca.bc, "periodic|nonperiodic (if not in the header)");
  compute->add_option("--metric", ca.metric, "taxicab|uniform|rectilinear|rectilinear-x|rectilinear-y|annular")
      ->capture_default_str();
  compute->add_option("--bandwidth", ca.bandwidth, "annular bin width")->capture_default_str();
  compute->add_option("--out", ca.out, "profile CSV (default: standard output)");
  compute->add_flag("--plot", ca.plot, "two-column m,f output");

  detail::GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "write a synthetic occupancy pattern");
  generate->add_option("--pattern", ga.pattern,
                       "uniform|chessboard|stripes|circles|proliferation|voronoi|aggregated|segregated")
      ->required();
  generate->add_option("--tessellation", ga.tessellation)->capture_default_str();
  generate->add_option("--dims", ga.dims, "LxxLy or LxxLyxLz (points per side for voronoi)")->capture_default_str();
  generate->add_option("--bc", ga.bc)->capture_default_str();
  generate->add_option("--density", ga.density, "target density, decimal or a/b")->capture_default_str();
  generate->add_option("--width", ga.width, "stripe width")->capture_default_str();
  generate->add_option("--spacing", ga.spacing, "circle spacing")->capture_default_str();
  generate->add_option("--steps", ga.steps, "proliferation steps")->capture_default_str();
  generate->add_option("--delta", ga.delta, "Voronoi point perturbation")->capture_default_str();
  generate->add_option("--seed", ga.seed, "random seed (required for random patterns)");
  generate->add_option("--edges", ga.edges, "existing graph for aggregated/segregated");
  generate->add_option("--out", ga.out, "occupancy CSV, or edge list for graph patterns")->required();
  generate->add_option("--occupied-out", ga.occupied_out, "occupied-vertex list for graph patterns");

  detail::GraphArgs gr;
  auto* graph = app.add_subcommand("graph", "general PCF of an edge list");
  graph->add_option("--edges", gr.edges, "edge list CSV")->required();
  graph->add_option("--occupied", gr.occupied, "occupied-vertex list")->required();
  graph->add_option("--out", gr.out, "profile CSV (default: standard output)");
  graph->add_flag("--plot", gr.plot, "two-column m,f output");

  detail::AverageArgs av;
  auto* average = app.add_subcommand("average", "pointwise mean of profile files");
  average->add_option("inputs", av.inputs, "profile CSV files")->required();
  average->add_option("--out", av.out, "profile CSV (default: standard output)");
  average->add_flag("--plot", av.plot, "two-column m,f output");

  detail::ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "check closed forms against enumeration");
  validate->add_option("--min-extent", va.min_extent)->capture_default_str();
  validate->add_option("--max-extent", va.max_extent)->capture_default_str();
  validate->add_option("--cube-max-extent", va.cube_max_extent)->capture_default_str();
  validate->add_option("--out", va.out, "per-row report CSV");
  validate->add_option("--table", va.table, "validity table CSV");

  detail::IngestArgs ia;
  auto* ingest = app.add_subcommand("ingest", "threshold a PGM/PPM image into an occupancy CSV");
  ingest->add_option("--image", ia.image)->required();
  ingest->add_option("--threshold", ia.threshold)->capture_default_str();
  ingest->add_option("--out", ia.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitValidation;
  }

  try {
    if (compute->parsed()) return detail::run_compute(ca, out);
    if (generate->parsed()) return detail::run_generate(ga, out);
    if (graph->parsed()) return detail::run_graph(gr, out);
    if (average->parsed()) return detail::run_average(av, out);
    if (validate->parsed()) return detail::run_validate(va, out);
    if (ingest->parsed()) return detail::run_ingest(ia);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args);
}

}  // namespace latpcf
