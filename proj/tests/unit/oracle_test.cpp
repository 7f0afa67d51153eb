#include "latpcf/oracle.hpp"
#include "support/naive.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace latpcf;

namespace {

constexpr auto Sq = TessellationKind::Square;
constexpr auto P = BoundaryKind::Periodic;
constexpr auto NP = BoundaryKind::NonPeriodic;

TEST(BruteSitePairs, SquareTaxicabFourByFour) {
  const auto s = brute_site_pairs(Sq, MetricKind::Taxicab, P, dims2(4, 4));
  EXPECT_EQ(s.at(1), 32u);
  // Only six distinct sites sit at offset sum 2 on a 4x4 torus.
  EXPECT_EQ(s.at(2), 48u);
  EXPECT_EQ(s.total(), 120u);
}

TEST(BruteSitePairs, SquareUniformSixBySix) {
  const auto s = brute_site_pairs(Sq, MetricKind::Uniform, P, dims2(6, 6));
  EXPECT_EQ(s.at(1), 4u * 36);
  EXPECT_EQ(s.at(2), 8u * 36);
  // At m = L/2 the ring folds onto itself: 11 sites, not 12.
  EXPECT_EQ(s.at(3), 198u);
}

TEST(BruteSitePairs, CubeTaxicab) {
  EXPECT_EQ(brute_site_pairs(TessellationKind::Cube, MetricKind::Taxicab, P, dims3(4, 4, 4)).at(1), 192u);
}

TEST(BruteSitePairs, MatchesNaiveReference) {
  for (auto kind : {Sq, TessellationKind::Triangle, TessellationKind::Hexagon})
    for (auto bc : {P, NP}) {
      const auto d = dims2(6, 4);
      const auto got = brute_site_pairs(kind, MetricKind::Taxicab, bc, d);
      for (const auto& [m, n] : naive::Lattice(kind, MetricKind::Taxicab, bc, d).site_pairs())
        EXPECT_EQ(got.at(m), static_cast<std::uint64_t>(n));
    }
}

TEST(BruteSitePairs, CapEnforced) {
  EXPECT_THROW(brute_site_pairs(Sq, MetricKind::Taxicab, P, dims2(200, 200)), ValidationError);
  EXPECT_THROW(brute_site_pairs(Sq, MetricKind::Taxicab, P, dims2(10, 10), 50), ValidationError);
}

TEST(VerifyNormalization, SmallSweepIsClean) {
  const auto r = verify_normalization(Sweep{4, 8, 5});
  EXPECT_GT(r.configurations, 0);
  EXPECT_EQ(r.mismatches(), 0);
  EXPECT_TRUE(r.ok());
}

TEST(VerifyNormalization, CorruptedFormulaFlagged) {
  const auto broken = [](TessellationKind k, MetricKind m, BoundaryKind bc, const Dims& d, int dist) {
    const auto s = site_pairs_analytic(k, m, bc, d, dist);
    return k == TessellationKind::Hexagon && bc == BoundaryKind::NonPeriodic && dist == 2 ? s + 1 : s;
  };
  const auto r = verify_normalization(Sweep{4, 6, 4}, broken);
  EXPECT_GT(r.mismatches(), 0);
  EXPECT_FALSE(r.ok());
  for (const auto& row : r.rows)
    if (!row.match) {
      EXPECT_EQ(row.kind, TessellationKind::Hexagon);
      EXPECT_EQ(row.m, 2);
    }
}

TEST(VerifyNormalization, ThrowingFormulaIsAMismatch) {
  const auto throws = [](TessellationKind, MetricKind, BoundaryKind, const Dims&, int) -> std::int64_t {
    throw std::logic_error("no");
  };
  const auto r = verify_normalization(Sweep{4, 4, 4}, throws);
  EXPECT_EQ(r.mismatches(), static_cast<std::int64_t>(r.rows.size()));
}

TEST(Reports, CsvAndTable) {
  const Sweep sw{4, 5, 4};
  const auto r = verify_normalization(sw);
  std::ostringstream csv, table;
  write_report_csv(r, csv);
  write_validity_table(r, sw, table);
  EXPECT_EQ(csv.str().rfind("kind,metric,bc,dims,m,analytic,brute,match\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  EXPECT_EQ(lines, r.rows.size() + 1);
  EXPECT_NE(table.str().find("hexagon,taxicab,nonperiodic"), std::string::npos);
  EXPECT_EQ(supported_combinations().size(), 12u);
}

}  // namespace
