#include "latpcf/cli.hpp"

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

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, ComputeChessboard) {
  const auto grid = tmp_path("chess.csv"), prof = tmp_path("chess_profile.csv");
  ASSERT_EQ(run({"generate", "--pattern", "chessboard", "--dims", "8x8", "--out", grid}).code, kExitOk);
  const auto r = run({"compute", "--input", grid, "--metric", "taxicab", "--bc", "periodic", "--out", prof});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto p = read_profile(prof);
  EXPECT_EQ(p.meta.lattice, "square");
  EXPECT_EQ(p.meta.n, 32);
  ASSERT_EQ(p.points.size(), 3u);
  EXPECT_EQ(p.points[0].f, 0.0);
  EXPECT_NEAR(p.points[1].f, 63.0 / 31.0, 1e-11);
}

TEST(Cli, HeaderlessInputNeedsTessellation) {
  const auto grid = tmp_path("bare.csv");
  std::ofstream(grid) << "1,0,1\n0,1,0\n1,0,1\n";
  EXPECT_EQ(run({"compute", "--input", grid, "--bc", "nonperiodic"}).code, kExitValidation);
  const auto r = run({"compute", "--input", grid, "--tessellation", "square", "--bc", "nonperiodic", "--plot"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("# seed=none\nm,f\n1,0\n", 0), 0u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"compute", "--input", tmp_path("does-not-exist.csv"), "--tessellation", "square", "--bc", "periodic"}).code,
            kExitIo);
  const auto bad = run({"compute", "--input", "x.csv", "--frobnicate"});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_NE(bad.err.find("frobnicate"), std::string::npos);
  EXPECT_NE(bad.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"generate", "--pattern", "uniform", "--out", tmp_path("u.csv")}).code, kExitValidation);
  EXPECT_EQ(run({"generate", "--pattern", "zigzag", "--out", tmp_path("z.csv")}).code, kExitValidation);
}

TEST(Cli, GenerateIsDeterministic) {
  const auto a = tmp_path("p1.csv"), b = tmp_path("p2.csv");
  for (const auto& path : {a, b})
    ASSERT_EQ(run({"generate", "--pattern", "proliferation", "--steps", "4", "--seed", "12", "--out", path}).code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a).find("generator=proliferation"), std::string::npos);
  EXPECT_NE(slurp(a).find("seed=12"), std::string::npos);
  EXPECT_EQ(read_occupancy(a), gen_proliferation(4, 12));
}

TEST(Cli, GraphPipeline) {
  const auto e = tmp_path("v.edges"), o = tmp_path("v.occ"), prof = tmp_path("v.csv");
  const auto g = run({"generate", "--pattern", "segregated", "--dims", "10x10", "--density", "2/5", "--seed", "3", "--out",
                      e, "--occupied-out", o});
  ASSERT_EQ(g.code, kExitOk) << g.err;
  EXPECT_NE(g.out.find("segregated density="), std::string::npos);
  ASSERT_EQ(run({"graph", "--edges", e, "--occupied", o, "--out", prof}).code, kExitOk);
  const auto p = read_profile(prof);
  EXPECT_EQ(p.meta.lattice, "graph");
  EXPECT_EQ(p.meta.dims, "Z=100");
  EXPECT_EQ(p.points.front().m, 1);
  EXPECT_EQ(run({"generate", "--pattern", "voronoi", "--seed", "3", "--out", e}).code, kExitValidation);
}

TEST(Cli, AverageMatchesLibrary) {
  std::vector<std::string> args{"average"};
  std::vector<PcfProfile> profiles;
  for (int s = 1; s <= 3; ++s) {
    const auto grid = tmp_path("avg" + std::to_string(s) + ".csv"), prof = tmp_path("avgp" + std::to_string(s) + ".csv");
    ASSERT_EQ(run({"generate", "--pattern", "uniform", "--dims", "12x12", "--seed", std::to_string(s), "--out", grid}).code,
              kExitOk);
    ASSERT_EQ(run({"compute", "--input", grid, "--metric", "uniform", "--out", prof}).code, kExitOk);
    args.push_back(prof);
    profiles.push_back(pcf_profile(read_occupancy(grid), MetricKind::Uniform));
  }
  const auto r = run(args);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  const auto avg = parse_profile(in, "stdout");
  const auto want = average_profiles(profiles);
  ASSERT_EQ(avg.points.size(), want.points.size());
  for (std::size_t i = 0; i < avg.points.size(); ++i) EXPECT_NEAR(avg.points[i].f, want.points[i].f, 1e-10);
  EXPECT_EQ(avg.meta.get("replicates"), "3");
}

TEST(Cli, AverageRejectsMismatch) {
  const auto a = tmp_path("mm_a.csv"), b = tmp_path("mm_b.csv"), pa = tmp_path("mm_pa.csv"), pb = tmp_path("mm_pb.csv");
  ASSERT_EQ(run({"generate", "--pattern", "chessboard", "--dims", "8x8", "--out", a}).code, kExitOk);
  ASSERT_EQ(run({"generate", "--pattern", "chessboard", "--dims", "10x10", "--out", b}).code, kExitOk);
  ASSERT_EQ(run({"compute", "--input", a, "--out", pa}).code, kExitOk);
  ASSERT_EQ(run({"compute", "--input", b, "--out", pb}).code, kExitOk);
  EXPECT_EQ(run({"average", pa, pb}).code, kExitValidation);
}

TEST(Cli, ValidateAndIngest) {
  const auto table = tmp_path("table.csv");
  const auto r = run({"validate", "--max-extent", "6", "--cube-max-extent", "5", "--table", table});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("mismatches=0"), std::string::npos);
  EXPECT_NE(slurp(table).find("constraint"), std::string::npos);

  const auto img = tmp_path("in.pgm"), occ = tmp_path("in.csv");
  std::ofstream(img) << "P2\n3 2\n255\n255 0 90\n10 200 80\n";
  ASSERT_EQ(run({"ingest", "--image", img, "--out", occ}).code, kExitOk);
  const auto g = read_occupancy(occ);
  EXPECT_EQ(agents(g), (std::vector<Site>{{1, 1}, {3, 1}, {2, 2}}));
  EXPECT_EQ(run({"ingest", "--image", tmp_path("nope.pgm"), "--out", occ}).code, kExitIo);
}

}  // namespace
