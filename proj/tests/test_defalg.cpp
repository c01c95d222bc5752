#include <gtest/gtest.h>

#include <set>

#include "flopkit/defalg.hpp"

using namespace flopkit;
using namespace flopkit::defalg;
using helix::SheafExpr;

TEST(Defalg, ProfileExamples) {
  const auto p30 = profile(3, 0);
  EXPECT_EQ(p30.loops, 2);
  EXPECT_EQ(p30.dim_sliced, 12);
  EXPECT_EQ(p30.dim_ab_sliced, 5);
  EXPECT_FALSE(p30.commutative);
  EXPECT_EQ(p30.presentation, "⟨x,y⟩/(x²,y²,xy+yx)");

  const auto p54 = profile(5, 4);
  EXPECT_EQ(p54, (DeformationProfile{5, 4, 0, 1, 1, true, "C"}));

  EXPECT_EQ(profile(1, 0), (DeformationProfile{1, 0, 0, 1, 1, true, "C"}));
  EXPECT_EQ(profile(3, 2).presentation, "C[x]/x³");
  EXPECT_EQ(profile(6, 6).presentation, std::nullopt);
}

TEST(Defalg, EveryProfileIsConsistent) {
  for (int ell = 1; ell <= 6; ++ell) {
    const auto ps = profiles(ell);
    EXPECT_EQ(ps.size(), half_period(ell) + 1);
    for (const auto& p : ps) {
      EXPECT_LE(p.dim_ab_sliced, p.dim_sliced);
      EXPECT_EQ(p.commutative, p.loops <= 1);
      if (p.commutative) {
        EXPECT_EQ(p.dim_ab_sliced, p.dim_sliced);
      }
    }
  }
}

TEST(Defalg, ProfileErrors) {
  EXPECT_THROW(profile(3, 3), DomainError);
  EXPECT_THROW(profile(0, 0), DomainError);
  EXPECT_THROW(profile(7, 0), DomainError);
}

TEST(Defalg, TableColumnsFoldAtHalfPeriod) {
  EXPECT_EQ(table_column(1, 3), 1u);
  EXPECT_EQ(table_column(3, 3), 1u);
  EXPECT_EQ(table_column(2, 3), 2u);
  EXPECT_EQ(table_column(-1, 3), 1u);
  EXPECT_EQ(table_column(17, 6), 5u);
}

TEST(Defalg, GvBoundsAndWeightedSums) {
  const std::vector<std::vector<int>> want = {
      {1}, {4, 1}, {5, 3, 1}, {6, 4, 2, 1}, {7, 6, 4, 2, 1}, {6, 6, 4, 3, 2, 1}};
  const int acon[] = {1, 8, 26, 56, 124, 200};
  for (int ell = 1; ell <= 6; ++ell) {
    const auto g = gv_bounds(ell);
    EXPECT_EQ(g.bounds, want[static_cast<std::size_t>(ell - 1)]) << ell;
    EXPECT_EQ(g.acon_bound, acon[ell - 1]);
    EXPECT_EQ(weighted_sum(g.bounds), g.acon_bound) << ell;
  }
}

TEST(Defalg, SphericalCandidates) {
  const std::vector<std::set<std::size_t>> want = {{0}, {1}, {1, 3}, {1, 5}, {1, 4, 6, 9}, {1, 11}};
  for (int ell = 1; ell <= 6; ++ell) {
    const auto region = helix::base_region(ell);
    std::set<std::size_t> got;
    for (std::size_t i = 0; i < region.size(); ++i)
      if (possibly_spherical(region[i], ell)) got.insert(i);
    EXPECT_EQ(got, want[static_cast<std::size_t>(ell - 1)]) << ell;
  }
}

// The noncommutativity predicate agrees with the loop data of the table.
TEST(Defalg, NoncommutativityMatchesTheTable) {
  for (int ell = 1; ell <= 6; ++ell) {
    const auto region = helix::base_region(ell);
    const auto& row = deformation_table::row(ell);
    for (std::size_t i = 0; i < region.size(); ++i) {
      const auto col = table_column(static_cast<Index>(i), ell);
      EXPECT_EQ(strictly_noncommutative(region[i], ell), !row.commutative[col])
          << "l=" << ell << " " << region[i].render();
    }
  }
}

TEST(Defalg, PredicatesIgnoreTwistAndShift) {
  EXPECT_TRUE(possibly_spherical(SheafExpr::thick(3).twisted(4).shifted(-2), 3));
  EXPECT_TRUE(strictly_noncommutative(SheafExpr::curve(5), 2));
  EXPECT_THROW(possibly_spherical(SheafExpr::thick(4), 3), DomainError);
}

TEST(Defalg, Json) {
  const auto j = to_json(profile(3, 0));
  EXPECT_EQ(j["dim_sliced"], 12);
  EXPECT_EQ(j["commutative"], false);
  EXPECT_TRUE(to_json(profile(6, 6))["presentation"].is_null());
  const auto g = to_json(gv_bounds(2));
  EXPECT_EQ(g["bounds"], (std::vector<int>{4, 1}));
  EXPECT_EQ(g["acon_bound"], 8);
}
