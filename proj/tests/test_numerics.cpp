#include <gtest/gtest.h>

#include "flopkit/numerics.hpp"

using namespace flopkit;
using namespace flopkit::numerics;

TEST(Numerics, FloorMod) {
  EXPECT_EQ(floor_mod(7, 4), 3);
  EXPECT_EQ(floor_mod(-1, 4), 3);
  EXPECT_EQ(floor_mod(-8, 4), 0);
  EXPECT_EQ(floor_mod(0, 1), 0);
  static_assert(floor_mod(-13, 12) == 11);
}

TEST(Numerics, PeriodsAndProvenance) {
  const int periods[] = {1, 2, 4, 6, 10, 12};
  for (int ell = 1; ell <= 6; ++ell) {
    const auto h = for_length(ell);
    EXPECT_EQ(h.period(), periods[ell - 1]);
    EXPECT_EQ(h.provenance(), ell == 3 ? Provenance::FigureDerived : Provenance::RecordedTable);
  }
}

TEST(Numerics, RecurrenceAndPalindromeOnEveryRow) {
  for (int ell = 1; ell <= 6; ++ell) {
    const auto h = for_length(ell);
    for (Index i = -3 * h.period(); i <= 3 * h.period(); ++i) {
      EXPECT_EQ(h.rank_at(i + 1) + h.rank_at(i - 1), h.n_at(i) * h.rank_at(i));
      EXPECT_EQ(h.rank_at(-i), h.rank_at(i));
    }
    EXPECT_EQ(h.n_at(0), 2 * ell);
    EXPECT_EQ(h.rank_at(1), ell);
    EXPECT_EQ(derive_ns(h.ranks()), h.ns());
  }
}

TEST(Numerics, CorruptedRowsAreRejected) {
  auto row = canonical_rows()[2];
  row.ranks[2] = 4;
  EXPECT_THROW(HelixNumerics::from_row(row), DomainError);

  row = canonical_rows()[3];
  row.ns[1] = 2;
  EXPECT_THROW(HelixNumerics::from_row(row), DomainError);

  row = canonical_rows()[4];
  row.ranks[3] = 1;
  EXPECT_THROW(HelixNumerics::from_row(row), DomainError);

  EXPECT_THROW(derive_ns({1, 3, 4}), DomainError);
  EXPECT_THROW(derive_ns({2, 1}), DomainError);
  EXPECT_THROW(for_length(0), DomainError);
  EXPECT_THROW(for_length(7), DomainError);
}

TEST(Numerics, EulerSequencesAreAdditive) {
  for (int ell = 1; ell <= 6; ++ell)
    for (Index i = -12; i <= 12; ++i) {
      const auto e = euler_sequence(i, ell);
      EXPECT_EQ(e.left + e.right, e.multiplicity * e.middle);
    }
  const auto e = euler_sequence(2, 5);
  EXPECT_EQ(e, (EulerSequence{2, 5, 4, 2, 3}));
}

TEST(Numerics, ProjectivePairsAndPunctures) {
  EXPECT_EQ(projective_ranks(0, 6), (std::pair{6, 1}));
  EXPECT_EQ(projective_ranks(1, 6), (std::pair{1, 6}));
  EXPECT_EQ(projective_ranks(6, 6), (std::pair{5, 2}));
  const Index punctures[] = {3, 4, 6, 8, 12, 14};
  for (int ell = 1; ell <= 6; ++ell) EXPECT_EQ(puncture_count(ell), punctures[ell - 1]);
}

TEST(Numerics, Json) {
  const auto j = to_json(for_length(3));
  EXPECT_EQ(j["N"], 4);
  EXPECT_EQ(j["ranks"], (std::vector<int>{1, 3, 2, 3}));
  EXPECT_EQ(j["provenance"], "figure-derived");
}
