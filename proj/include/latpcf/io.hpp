#pragma once

// File formats. Every text format starts with a "# format=1 ..." header.
//
//   occupancy  # format=1 kind=square bc=periodic
//              comma-separated 0/1 rows, row 1 is y=1; cube layers are
//              separated by a blank line
//   graph      edges: "# format=1 Z=<count>" then "i,j" lines (1-based)
//              occupied: one 1-based vertex id per line
//   profile    "# key=value" header lines, then m,count,expected,f

#include "latpcf/error.hpp"
#include "latpcf/graph.hpp"
#include "latpcf/lattice.hpp"
#include "latpcf/pcf.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace latpcf {

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

/// key=value tokens from a "# ..." comment line.
inline std::map<std::string, std::string> header_tokens(std::string_view line) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(line.substr(1))};
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

inline ValidationError parse_error(const std::string& source, std::size_t line, const std::string& what) {
  return ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view s, const std::string& source, std::size_t line) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw parse_error(source, line, "expected a number, got '" + std::string(s) + "'");
  return v;
}

inline std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline void check_written(std::ostream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace detail

/// Parses "4x4" or "8x6x10".
inline Dims parse_dims(std::string_view s) {
  const auto parts = detail::split(s, 'x');
  if (parts.size() < 2 || parts.size() > 3) throw ValidationError("dims must look like LxxLy or LxxLyxLz, got '" + std::string(s) + "'");
  std::vector<int> v;
  for (const auto& p : parts) v.push_back(detail::parse_number<int>(p, "dims", 1));
  return parts.size() == 2 ? dims2(v[0], v[1]) : dims3(v[0], v[1], v[2]);
}

/// Exact rational from "0.4", "2/5" or "1".
inline Rational parse_rational(std::string_view s) {
  const std::string t = detail::trim(s);
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    const auto num = detail::parse_number<std::int64_t>(std::string_view(t).substr(0, slash), "rational", 1);
    const auto den = detail::parse_number<std::int64_t>(std::string_view(t).substr(slash + 1), "rational", 1);
    if (den == 0) throw ValidationError("zero denominator in '" + t + "'");
    return make_rational(num, den);
  }
  const auto dot = t.find('.');
  const std::string whole = dot == std::string::npos ? t : t.substr(0, dot);
  const std::string frac = dot == std::string::npos ? "" : t.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || frac.size() > 18) throw ValidationError("cannot read '" + t + "' as a number");
  for (char c : whole + frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ValidationError("cannot read '" + t + "' as a number");
  BigInt num = whole.empty() ? BigInt(0) : BigInt(whole);
  BigInt den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Rational(num, den);
}

/// Reads an occupancy grid. `kind` and `bc` fill in for a missing header and
/// must agree with it when both are given.
inline OccupancyGrid parse_occupancy(std::istream& in, const std::string& source,
                                     std::optional<TessellationKind> kind = std::nullopt,
                                     std::optional<BoundaryKind> bc = std::nullopt) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<std::vector<std::uint8_t>>> layers(1);
  std::vector<std::size_t> first_line(1, 0);
  bool any_row = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (!t.empty() && t[0] == '#') {
      if (any_row) throw detail::parse_error(source, lineno, "header after data");
      const auto tok = detail::header_tokens(t);
      if (auto it = tok.find("format"); it != tok.end() && it->second != "1")
        throw detail::parse_error(source, lineno, "unsupported format version " + it->second);
      if (auto it = tok.find("kind"); it != tok.end()) {
        const auto k = parse_tessellation(it->second);
        if (kind && *kind != k)
          throw detail::parse_error(source, lineno, "header kind " + it->second + " disagrees with requested " +
                                                        std::string(to_string(*kind)));
        kind = k;
      }
      if (auto it = tok.find("bc"); it != tok.end()) {
        const auto b = parse_boundary(it->second);
        if (bc && *bc != b)
          throw detail::parse_error(source, lineno, "header bc " + it->second + " disagrees with requested " +
                                                        std::string(to_string(*bc)));
        bc = b;
      }
      continue;
    }
    if (t.empty()) {
      if (any_row && !layers.back().empty()) {
        layers.emplace_back();
        first_line.push_back(0);
      }
      continue;
    }
    std::vector<std::uint8_t> row;
    for (const auto& cell : detail::split(t, ',')) {
      if (cell == "0")
        row.push_back(0);
      else if (cell == "1")
        row.push_back(1);
      else
        throw detail::parse_error(source, lineno, "cell '" + cell + "' is not 0 or 1");
    }
    auto& layer = layers.back();
    if (layer.empty()) first_line.back() = lineno;
    if (!layer.empty() && row.size() != layer.front().size())
      throw detail::parse_error(source, lineno, "ragged row: " + std::to_string(row.size()) + " cells, expected " +
                                                    std::to_string(layer.front().size()));
    if (any_row && row.size() != layers.front().front().size())
      throw detail::parse_error(source, lineno, "row width differs from the first layer");
    layer.push_back(std::move(row));
    any_row = true;
  }
  if (!any_row) throw ValidationError(source + ": no occupancy rows");
  if (layers.back().empty()) {
    layers.pop_back();
    first_line.pop_back();
  }
  if (!kind) throw ValidationError(source + ": tessellation not given in header or options");
  if (!bc) throw ValidationError(source + ": boundary condition not given in header or options");
  for (std::size_t l = 1; l < layers.size(); ++l)
    if (layers[l].size() != layers[0].size())
      throw detail::parse_error(source, first_line[l], "layer has " + std::to_string(layers[l].size()) +
                                                           " rows, expected " + std::to_string(layers[0].size()));
  const bool cube = *kind == TessellationKind::Cube;
  if (!cube && layers.size() > 1)
    throw detail::parse_error(source, first_line[1], "blank line splits a 2D grid into layers");
  const int lx = static_cast<int>(layers[0][0].size()), ly = static_cast<int>(layers[0].size());
  const Dims dims = cube ? dims3(lx, ly, static_cast<int>(layers.size())) : dims2(lx, ly);
  OccupancyGrid grid(*kind, dims, *bc);
  for (std::size_t z = 0; z < layers.size(); ++z)
    for (int y = 0; y < ly; ++y)
      for (int x = 0; x < lx; ++x)
        if (layers[z][y][x]) grid.set(Site{x + 1, y + 1, static_cast<int>(z) + 1}, true);
  return grid;
}

inline OccupancyGrid read_occupancy(const std::string& path, std::optional<TessellationKind> kind = std::nullopt,
                                    std::optional<BoundaryKind> bc = std::nullopt) {
  auto in = detail::open_in(path);
  return parse_occupancy(in, path, kind, bc);
}

inline void write_occupancy(const OccupancyGrid& grid, std::ostream& out) {
  const auto& d = grid.dims();
  out << "# format=1 kind=" << to_string(grid.kind()) << " bc=" << to_string(grid.bc()) << " dims=" << d.to_string()
      << '\n';
  for (int z = 1; z <= d.layers(); ++z) {
    if (z > 1) out << '\n';
    for (int y = 1; y <= d.ly; ++y) {
      for (int x = 1; x <= d.lx; ++x) {
        if (x > 1) out << ',';
        out << (grid.occupied(Site{x, y, z}) ? '1' : '0');
      }
      out << '\n';
    }
  }
}

inline void write_occupancy(const OccupancyGrid& grid, const std::string& path) {
  auto out = detail::open_out(path);
  write_occupancy(grid, out);
  detail::check_written(out, path);
}

namespace detail {

inline std::string sniff_format(std::string_view head) {
  auto starts = [&](std::string_view p) { return head.substr(0, p.size()) == p; };
  if (starts("\x89PNG")) return "PNG";
  if (starts("\xFF\xD8\xFF")) return "JPEG";
  if (starts("GIF8")) return "GIF";
  if (starts("BM")) return "BMP";
  if (starts("II*") || starts(std::string_view("MM\0*", 4))) return "TIFF";
  if (starts("P1") || starts("P4")) return "PBM";
  if (starts("P7")) return "PAM";
  return "unknown";
}

/// Next whitespace-delimited header token, skipping '#' comments.
inline std::string pnm_token(std::istream& in, const std::string& source) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok += c;
  }
  if (tok.empty()) throw ValidationError(source + ": truncated image header");
  return tok;
}

}  // namespace detail

/// Binary occupancy from a PGM/PPM image (P2, P3, P5, P6). A pixel is
/// occupied iff every channel, scaled to 0..255, is strictly above
/// `threshold`. Image row 1 (top) becomes y=1.
inline OccupancyGrid read_image(const std::string& path, int threshold = 80) {
  auto in = detail::open_in(path, std::ios::in | std::ios::binary);
  char head[4] = {0, 0, 0, 0};
  in.read(head, 4);
  const std::string_view h(head, static_cast<std::size_t>(in.gcount()));
  if (h.size() < 2 || h[0] != 'P' || (h[1] != '2' && h[1] != '3' && h[1] != '5' && h[1] != '6'))
    throw ValidationError(path + ": unsupported image format (" + detail::sniff_format(h) +
                          "); convert to PGM or PPM first");
  in.clear();
  in.seekg(2);
  const char kind = h[1];
  const bool ascii = kind == '2' || kind == '3';
  const int channels = (kind == '3' || kind == '6') ? 3 : 1;
  auto num = [&](const char* what) {
    const auto tok = detail::pnm_token(in, path);
    long v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || v < 0)
      throw ValidationError(path + ": bad " + std::string(what) + " '" + tok + "'");
    return v;
  };
  const long width = num("width"), height = num("height"), maxval = num("maxval");
  if (width < 2 || height < 2) throw ValidationError(path + ": image must be at least 2x2 pixels");
  if (maxval < 1 || maxval > 65535) throw ValidationError(path + ": maxval out of range");
  OccupancyGrid grid(TessellationKind::Square, dims2(static_cast<int>(width), static_cast<int>(height)),
                     BoundaryKind::NonPeriodic);
  auto sample = [&]() -> long {
    if (ascii) {
      const long v = num("sample");
      if (v > maxval) throw ValidationError(path + ": sample exceeds maxval");
      return v;
    }
    unsigned char b[2];
    const int n = maxval > 255 ? 2 : 1;
    in.read(reinterpret_cast<char*>(b), n);
    if (in.gcount() != n) throw ValidationError(path + ": truncated pixel data");
    return n == 2 ? (long{b[0]} << 8 | b[1]) : long{b[0]};
  };
  for (long y = 1; y <= height; ++y)
    for (long x = 1; x <= width; ++x) {
      bool on = true;
      for (int c = 0; c < channels; ++c)
        // v * 255 / maxval > threshold, without rounding
        if (!(sample() * 255 > static_cast<long>(threshold) * maxval)) on = false;
      if (on) grid.set(Site{static_cast<int>(x), static_cast<int>(y)}, true);
    }
  return grid;
}

/// Graph from an edge list and an occupied-vertex list (both 1-based).
inline GeneralLattice parse_graph(std::istream& edges_in, const std::string& edges_source, std::istream& occ_in,
                                  const std::string& occ_source) {
  std::optional<std::size_t> z;
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::size_t> edge_lines;
  while (std::getline(edges_in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto tok = detail::header_tokens(t);
      for (const char* key : {"Z", "z"})
        if (auto it = tok.find(key); it != tok.end())
          z = detail::parse_number<std::size_t>(it->second, edges_source, lineno);
      continue;
    }
    if (t == "i,j") continue;
    const auto parts = detail::split(t, ',');
    if (parts.size() != 2) throw detail::parse_error(edges_source, lineno, "expected 'i,j'");
    const auto a = detail::parse_number<std::int64_t>(parts[0], edges_source, lineno);
    const auto b = detail::parse_number<std::int64_t>(parts[1], edges_source, lineno);
    if (!z) throw detail::parse_error(edges_source, lineno, "edge before the 'Z=' header");
    if (a < 1 || b < 1 || a > static_cast<std::int64_t>(*z) || b > static_cast<std::int64_t>(*z))
      throw detail::parse_error(edges_source, lineno, "vertex id outside 1.." + std::to_string(*z));
    if (a == b) throw detail::parse_error(edges_source, lineno, "self-loop at vertex " + std::to_string(a));
    edges.emplace_back(static_cast<std::uint32_t>(a - 1), static_cast<std::uint32_t>(b - 1));
  }
  if (!z) throw ValidationError(edges_source + ": missing 'Z=' header");
  GeneralLattice g(*z, edges);
  lineno = 0;
  while (std::getline(occ_in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto v = detail::parse_number<std::int64_t>(t, occ_source, lineno);
    if (v < 1 || v > static_cast<std::int64_t>(*z))
      throw detail::parse_error(occ_source, lineno, "vertex id outside 1.." + std::to_string(*z));
    g.set_occupied(static_cast<std::size_t>(v - 1), true);
  }
  return g;
}

inline GeneralLattice read_graph(const std::string& edges_path, const std::string& occupied_path) {
  auto e = detail::open_in(edges_path);
  auto o = detail::open_in(occupied_path);
  return parse_graph(e, edges_path, o, occupied_path);
}

inline void write_graph(const GeneralLattice& g, std::ostream& edges_out, std::ostream& occ_out) {
  edges_out << "# format=1 Z=" << g.size() << '\n';
  for (const auto& [a, b] : g.edges()) edges_out << a + 1 << ',' << b + 1 << '\n';
  occ_out << "# format=1\n";
  for (auto v : g.occupied_vertices()) occ_out << v + 1 << '\n';
}

inline void write_graph(const GeneralLattice& g, const std::string& edges_path, const std::string& occupied_path) {
  auto e = detail::open_out(edges_path);
  auto o = detail::open_out(occupied_path);
  write_graph(g, e, o);
  detail::check_written(e, edges_path);
  detail::check_written(o, occupied_path);
}

enum class ProfileMode { Full, Plot };

namespace detail {
inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace detail

inline void write_profile(const PcfProfile& p, std::ostream& out, ProfileMode mode = ProfileMode::Full) {
  const std::string seed = p.meta.seed ? std::to_string(*p.meta.seed) : "none";
  if (mode == ProfileMode::Plot) {
    out << "# seed=" << seed << '\n' << "m,f\n";
    for (const auto& pt : p.points) out << pt.m << ',' << detail::fmt12(pt.f) << '\n';
    return;
  }
  out << "# format=1\n";
  out << "# lattice=" << p.meta.lattice << '\n';
  out << "# metric=" << p.meta.metric << '\n';
  if (!p.meta.bc.empty()) out << "# bc=" << p.meta.bc << '\n';
  out << "# dims=" << p.meta.dims << '\n';
  out << "# N=" << (p.meta.n ? std::to_string(*p.meta.n) : "mixed") << '\n';
  out << "# seed=" << seed << '\n';
  if (!p.meta.generator.empty()) out << "# generator=" << p.meta.generator << '\n';
  for (const auto& [k, v] : p.meta.extra) out << "# " << k << '=' << v << '\n';
  out << "m,count,expected,f\n";
  for (const auto& pt : p.points)
    out << pt.m << ',' << pt.count << ',' << detail::fmt12(pt.expected) << ',' << detail::fmt12(pt.f) << '\n';
}

inline void write_profile(const PcfProfile& p, const std::string& path, ProfileMode mode = ProfileMode::Full) {
  auto out = detail::open_out(path);
  write_profile(p, out, mode);
  detail::check_written(out, path);
}

inline PcfProfile parse_profile(std::istream& in, const std::string& source) {
  PcfProfile p;
  std::string line;
  std::size_t lineno = 0;
  bool columns = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto eq = t.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = detail::trim(std::string_view(t).substr(1, eq - 1));
      const std::string val = t.substr(eq + 1);
      if (key == "format") {
        if (val != "1") throw detail::parse_error(source, lineno, "unsupported format version " + val);
      } else if (key == "lattice") {
        p.meta.lattice = val;
      } else if (key == "metric") {
        p.meta.metric = val;
      } else if (key == "bc") {
        p.meta.bc = val;
      } else if (key == "dims") {
        p.meta.dims = val;
      } else if (key == "N") {
        if (val != "mixed") p.meta.n = detail::parse_number<std::int64_t>(val, source, lineno);
      } else if (key == "seed") {
        if (val != "none") p.meta.seed = detail::parse_number<Seed>(val, source, lineno);
      } else if (key == "generator") {
        p.meta.generator = val;
      } else {
        p.meta.extra.emplace_back(key, val);
      }
      continue;
    }
    if (!columns) {
      if (t != "m,count,expected,f") throw detail::parse_error(source, lineno, "expected column header 'm,count,expected,f'");
      columns = true;
      continue;
    }
    const auto parts = detail::split(t, ',');
    if (parts.size() != 4) throw detail::parse_error(source, lineno, "expected 4 fields");
    PcfPoint pt;
    pt.m = detail::parse_number<int>(parts[0], source, lineno);
    pt.count = detail::parse_number<std::uint64_t>(parts[1], source, lineno);
    pt.expected = detail::parse_number<double>(parts[2], source, lineno);
    pt.f = detail::parse_number<double>(parts[3], source, lineno);
    p.points.push_back(std::move(pt));
  }
  if (!columns) throw ValidationError(source + ": not a profile file");
  return p;
}

inline PcfProfile read_profile(const std::string& path) {
  auto in = detail::open_in(path);
  return parse_profile(in, path);
}

}  // namespace latpcf
