#include "latpcf/io.hpp"
#include "latpcf/patterns.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace latpcf;

namespace {

std::string tmp_path(const std::string& name) {
  std::filesystem::create_directories(LATPCF_TEST_TMPDIR);
  return (std::filesystem::path(LATPCF_TEST_TMPDIR) / name).string();
}

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

OccupancyGrid parse(const std::string& text, std::optional<TessellationKind> kind = TessellationKind::Square,
                    std::optional<BoundaryKind> bc = BoundaryKind::NonPeriodic) {
  std::istringstream in(text);
  return parse_occupancy(in, "mem", kind, bc);
}

TEST(ParseDims, Forms) {
  EXPECT_EQ(parse_dims("4x4"), dims2(4, 4));
  EXPECT_EQ(parse_dims("8x6x10"), dims3(8, 6, 10));
  EXPECT_THROW(parse_dims("4"), ValidationError);
  EXPECT_THROW(parse_dims("4xa"), ValidationError);
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("0.4"), Rational(2, 5));
  EXPECT_EQ(parse_rational("2/5"), Rational(2, 5));
  EXPECT_EQ(parse_rational("1"), Rational(1));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), ValidationError);
  EXPECT_THROW(parse_rational("-0.1"), ValidationError);
  EXPECT_THROW(parse_rational("abc"), ValidationError);
}

TEST(Occupancy, TwoByTwoChessboard) {
  const auto g = parse("1,0\n0,1\n");
  EXPECT_EQ(g.dims(), dims2(2, 2));
  EXPECT_TRUE(g.occupied({1, 1}));
  EXPECT_FALSE(g.occupied({2, 1}));
  EXPECT_TRUE(g.occupied({2, 2}));
}

TEST(Occupancy, EmptyFileRejected) {
  EXPECT_THROW(parse(""), ValidationError);
  EXPECT_THROW(parse("# format=1 kind=square bc=periodic\n"), ValidationError);
}

TEST(Occupancy, CubeLayers) {
  const auto g = parse("1,0\n0,0\n\n0,0\n0,1\n", TessellationKind::Cube);
  EXPECT_EQ(g.dims(), dims3(2, 2, 2));
  EXPECT_TRUE(g.occupied({1, 1, 1}));
  EXPECT_TRUE(g.occupied({2, 2, 2}));
  EXPECT_EQ(g.agent_count(), 2);
}

TEST(Occupancy, ErrorsNameTheLine) {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("1,0,1\n0,1\n").find("mem:2"), std::string::npos);
  EXPECT_NE(message("1,0\n0,2\n").find("mem:2"), std::string::npos);
  EXPECT_NE(message("# kind=hexagon\n1,0\n0,1\n").find("mem:1"), std::string::npos);
}

TEST(Occupancy, HeaderSuppliesKindAndBc) {
  std::istringstream in("# format=1 kind=hexagon bc=periodic\n1,0\n0,1\n0,0\n1,1\n");
  const auto g = parse_occupancy(in, "mem");
  EXPECT_EQ(g.kind(), TessellationKind::Hexagon);
  EXPECT_EQ(g.bc(), BoundaryKind::Periodic);
  EXPECT_EQ(g.dims(), dims2(2, 4));
  std::istringstream bare("1,0\n0,1\n");
  EXPECT_THROW(parse_occupancy(bare, "mem"), ValidationError);
}

TEST(Occupancy, RoundTrip) {
  const auto g = gen_uniform_random(TessellationKind::Cube, dims3(4, 3, 5), BoundaryKind::Periodic, Rational(1, 3), 8);
  const auto path = tmp_path("cube.csv");
  write_occupancy(g, path);
  EXPECT_EQ(read_occupancy(path), g);
  EXPECT_THROW(read_occupancy(tmp_path("missing.csv")), IoError);
}

std::string ppm(const std::vector<std::array<int, 3>>& px, int w, int h) {
  std::string s = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  for (const auto& p : px)
    for (int c : p) s += static_cast<char>(c);
  return s;
}

TEST(ReadImage, ThresholdRule) {
  const auto path = tmp_path("px.ppm");
  write_bytes(path, ppm({{255, 255, 255}, {0, 0, 0}, {100, 100, 70}, {81, 81, 81}}, 2, 2));
  const auto g = read_image(path);
  EXPECT_TRUE(g.occupied({1, 1}));
  EXPECT_FALSE(g.occupied({2, 1}));
  EXPECT_FALSE(g.occupied({1, 2}));
  EXPECT_TRUE(g.occupied({2, 2}));
  EXPECT_EQ(g.bc(), BoundaryKind::NonPeriodic);
}

TEST(ReadImage, AsciiGreyAndSixteenBit) {
  const auto a = tmp_path("grey.pgm");
  write_bytes(a, "P2\n# comment\n2 2\n255\n80 81\n0 255\n");
  const auto g = read_image(a);
  EXPECT_FALSE(g.occupied({1, 1}));
  EXPECT_TRUE(g.occupied({2, 1}));
  EXPECT_EQ(g.agent_count(), 2);

  const auto b = tmp_path("wide.pgm");
  std::string s = "P5\n2 2\n65535\n";
  for (int v : {0xFFFF, 0x0000, 0x5000, 0x5200}) {
    s += static_cast<char>(v >> 8);
    s += static_cast<char>(v & 0xFF);
  }
  write_bytes(b, s);
  const auto w = read_image(b);
  // 0x5000/65535*255 = 79.7 (vacant), 0x5200 -> 81.7 (occupied)
  EXPECT_TRUE(w.occupied({1, 1}));
  EXPECT_FALSE(w.occupied({2, 1}));
  EXPECT_FALSE(w.occupied({1, 2}));
  EXPECT_TRUE(w.occupied({2, 2}));
}

TEST(ReadImage, UnsupportedFormatNamed) {
  const auto path = tmp_path("x.png");
  write_bytes(path, std::string("\x89PNG\r\n\x1a\n", 8) + "rest");
  try {
    read_image(path);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("PNG"), std::string::npos);
  }
}

TEST(ReadGraph, PathAndErrors) {
  auto graph = [](const std::string& edges, const std::string& occ) {
    std::istringstream e(edges), o(occ);
    return parse_graph(e, "edges", o, "occ");
  };
  const auto g = graph("# format=1 Z=3\ni,j\n1,2\n2,3\n", "1\n3\n");
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.occupied_vertices(), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(graph("# Z=3\n1,2\n1,2\n2,1\n", "").edge_count(), 1u);
  EXPECT_THROW(graph("# Z=3\n2,2\n", ""), ValidationError);
  EXPECT_THROW(graph("# Z=3\n1,4\n", ""), ValidationError);
  EXPECT_THROW(graph("# Z=3\n1,2\n", "4\n"), ValidationError);
  EXPECT_THROW(graph("1,2\n", ""), ValidationError);
}

TEST(ReadGraph, RoundTrip) {
  auto v = gen_voronoi_lattice(6, 6, 1.0, 3);
  auto g = gen_aggregated(v.lattice, Rational(1, 2), 4).lattice;
  const auto e = tmp_path("g.edges"), o = tmp_path("g.occ");
  write_graph(g, e, o);
  EXPECT_EQ(read_graph(e, o), g);
}

TEST(Profile, RoundTripIsByteStable) {
  auto g = gen_uniform_random(TessellationKind::Square, dims2(20, 20), BoundaryKind::Periodic, Rational(1, 2), 6);
  auto p = pcf_profile(g, MetricKind::Taxicab);
  p.meta.seed = 6;
  p.meta.generator = "uniform";
  p.meta.set("density", "1/2");
  std::ostringstream first;
  write_profile(p, first);
  std::istringstream in(first.str());
  const auto q = parse_profile(in, "mem");
  EXPECT_EQ(q.meta.lattice, p.meta.lattice);
  EXPECT_EQ(q.meta.metric, p.meta.metric);
  EXPECT_EQ(q.meta.bc, p.meta.bc);
  EXPECT_EQ(q.meta.dims, p.meta.dims);
  EXPECT_EQ(q.meta.n, p.meta.n);
  EXPECT_EQ(q.meta.seed, p.meta.seed);
  EXPECT_EQ(q.meta.generator, p.meta.generator);
  EXPECT_EQ(q.meta.get("density"), "1/2");
  ASSERT_EQ(q.points.size(), p.points.size());
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    EXPECT_EQ(q.points[i].m, p.points[i].m);
    EXPECT_EQ(q.points[i].count, p.points[i].count);
    EXPECT_NEAR(q.points[i].f, p.points[i].f, 1e-11 * std::max(1.0, p.points[i].f));
  }
  std::ostringstream second;
  write_profile(q, second);
  EXPECT_EQ(first.str(), second.str());
}

TEST(Profile, PlotMode) {
  auto g = gen_deterministic_pattern(Chessboard{}, dims2(6, 6));
  auto p = pcf_profile(g, MetricKind::Taxicab);
  std::ostringstream out;
  write_profile(p, out, ProfileMode::Plot);
  EXPECT_EQ(out.str(), "# seed=none\nm,f\n1,0\n2,2.05882352941\n");
}

TEST(Profile, Errors) {
  std::istringstream bad("# format=2\nm,count,expected,f\n");
  EXPECT_THROW(parse_profile(bad, "mem"), ValidationError);
  std::istringstream none("# lattice=square\n");
  EXPECT_THROW(parse_profile(none, "mem"), ValidationError);
}

}  // namespace
