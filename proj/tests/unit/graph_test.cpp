#include "latpcf/graph.hpp"
#include "latpcf/patterns.hpp"
#include "latpcf/pcf.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace latpcf;

namespace {

GeneralLattice path3() {
  const std::vector<Edge> e{{0, 1}, {1, 2}};
  return GeneralLattice(3, e);
}

GeneralLattice cycle4() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return GeneralLattice(4, e);
}

TEST(GeneralLattice, Construction) {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {0, 1}, {1, 2}};
  const GeneralLattice g(3, e);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_EQ(g.degree(1), 2u);
  const std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(GeneralLattice(3, loop), ValidationError);
  const std::vector<Edge> out{{0, 3}};
  EXPECT_THROW(GeneralLattice(3, out), ValidationError);
}

TEST(GeneralLattice, Occupancy) {
  auto g = path3();
  g.set_occupied(0, true);
  g.set_occupied(0, true);
  g.set_occupied(2, true);
  EXPECT_EQ(g.agent_count(), 2);
  EXPECT_EQ(g.density(), Rational(2, 3));
  EXPECT_EQ(g.occupied_vertices(), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_THROW(g.set_occupied(3, true), ValidationError);
}

TEST(DistanceMatrix, Path) {
  const auto d = build_distance_matrix(path3());
  const int want[3][3] = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(d.at(i, j), static_cast<std::uint32_t>(want[i][j]));
}

TEST(DistanceMatrix, Cycle) {
  const auto d = build_distance_matrix(cycle4());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_TRUE(d.at(i, j) == 1 || d.at(i, j) == 2);
    }
  EXPECT_EQ(d.at(0, 2), 2u);
  EXPECT_EQ(d.at(1, 3), 2u);
}

TEST(DistanceMatrix, TooLargeRejected) {
  const GeneralLattice g(kMaxMatrixVertices + 1, std::vector<Edge>{});
  EXPECT_THROW(build_distance_matrix(g), ValidationError);
}

TEST(PairCounts, FullOccupancy) {
  auto g = cycle4();
  for (int v = 0; v < 4; ++v) g.set_occupied(v, true);
  const auto c = pair_counts_from_matrix(g, build_distance_matrix(g));
  EXPECT_EQ(c.agents, c.sites);
}

TEST(PairCounts, PathEnds) {
  auto g = path3();
  g.set_occupied(0, true);
  g.set_occupied(2, true);
  const auto c = pair_counts_from_matrix(g, build_distance_matrix(g));
  EXPECT_EQ(c.agents.at(1), 0u);
  EXPECT_EQ(c.agents.at(2), 1u);
  EXPECT_EQ(c.sites.at(1), 2u);
  EXPECT_EQ(c.sites.at(2), 1u);
}

TEST(PairCounts, DisconnectedComponents) {
  // Triangle {0,1,2} and edge {3,4}: 3*2 cross pairs.
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}};
  GeneralLattice g(5, e);
  for (int v = 0; v < 5; ++v) g.set_occupied(v, true);
  const auto c = pair_counts_from_matrix(g, build_distance_matrix(g));
  EXPECT_EQ(c.sites.unreachable, 6u);
  EXPECT_EQ(c.agents.unreachable, 6u);
  EXPECT_EQ(stream_pair_counts(g).sites, c.sites);
}

TEST(PairCounts, SizeMismatchRejected) {
  EXPECT_THROW(pair_counts_from_matrix(path3(), build_distance_matrix(cycle4())), ValidationError);
}

TEST(GraphPcf, FullIsUnity) {
  auto g = cycle4();
  for (int v = 0; v < 4; ++v) g.set_occupied(v, true);
  const auto p = graph_pcf(g);
  ASSERT_EQ(p.points.size(), 2u);
  for (const auto& pt : p.points) EXPECT_EQ(*pt.f_exact, Rational(1));
  EXPECT_EQ(p.meta.lattice, "graph");
  EXPECT_EQ(p.meta.dims, "Z=4");
}

TEST(GraphPcf, PathEndsValue) {
  auto g = path3();
  g.set_occupied(0, true);
  g.set_occupied(2, true);
  const auto p = graph_pcf(g);
  // E(2) = 2*1*1/(3*2) = 1/3, c(2) = 1.
  EXPECT_EQ(*p.at(2).f_exact, Rational(3));
  EXPECT_EQ(*p.at(1).f_exact, Rational(0));
}

TEST(GraphPcf, FewerThanTwoAgentsRejected) {
  auto g = path3();
  g.set_occupied(1, true);
  EXPECT_THROW(graph_pcf(g), ValidationError);
}

TEST(GraphPcf, UnreachableAgentPairsRecorded) {
  const std::vector<Edge> e{{0, 1}, {2, 3}};
  GeneralLattice g(4, e);
  g.set_occupied(0, true);
  g.set_occupied(1, true);
  g.set_occupied(2, true);
  const auto p = graph_pcf(g);
  EXPECT_EQ(p.meta.get("unreachable_agent_pairs"), "2");
}

TEST(GridToGraph, TwoByTwo) {
  const auto np = grid_to_graph(TessellationKind::Square, dims2(2, 2), BoundaryKind::NonPeriodic);
  EXPECT_EQ(np.size(), 4u);
  EXPECT_EQ(np.edge_count(), 4u);
  const auto p = grid_to_graph(TessellationKind::Square, dims2(2, 2), BoundaryKind::Periodic);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.edge_count(), 4u);
  EXPECT_EQ(p, np);
}

TEST(GridToGraph, CarriesOccupancyAndMatchesNative) {
  for (auto kind : {TessellationKind::Square, TessellationKind::Triangle, TessellationKind::Hexagon})
    for (auto bc : {BoundaryKind::Periodic, BoundaryKind::NonPeriodic}) {
      const auto grid = gen_uniform_random(kind, dims2(8, 8), bc, Rational(1, 2), 42);
      const auto g = grid_to_graph(grid);
      EXPECT_EQ(g.agent_count(), grid.agent_count());
      const auto a = graph_pcf(g), b = pcf_profile(grid, MetricKind::Taxicab);
      for (const auto& pt : b.points) EXPECT_EQ(*a.at(pt.m).f_exact, *pt.f_exact);
    }
}

TEST(GridToGraph, UniformMetricUsesMooreShell) {
  const auto g = grid_to_graph(TessellationKind::Square, dims2(5, 5), BoundaryKind::NonPeriodic, MetricKind::Uniform);
  EXPECT_EQ(g.degree(12), 8u);
  EXPECT_EQ(g.degree(0), 3u);
}

TEST(HandBuiltRegions, SeventeenVertexGraph) {
  // An irregular 17-region map drawn by hand: a ring of 8 around a centre
  // region, with 8 outer regions each touching two ring regions.
  std::vector<Edge> e;
  for (std::uint32_t i = 1; i <= 8; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, i % 8 + 1);
    e.emplace_back(i, i + 8);
    e.emplace_back(i % 8 + 1, i + 8);
  }
  GeneralLattice g(17, e);
  for (std::uint32_t v : {0u, 9u, 11u, 13u, 15u}) g.set_occupied(v, true);
  const auto p = graph_pcf(g);
  const auto d = build_distance_matrix(g);
  std::uint32_t diam = 0;
  for (std::size_t i = 0; i < 17; ++i)
    for (std::size_t j = 0; j < 17; ++j) diam = std::max(diam, d.at(i, j));
  EXPECT_EQ(p.points.back().m, static_cast<int>(diam));
  std::uint64_t pairs = 0;
  for (const auto& pt : p.points) pairs += pt.count;
  EXPECT_EQ(pairs, 10u);
}

}  // namespace
