#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "flopkit/helix.hpp"

using namespace flopkit;
using namespace flopkit::helix;

namespace {

std::vector<std::string> rendered_region(int ell) {
  std::vector<std::string> out;
  for (const auto& s : base_region(ell)) out.push_back(s.render());
  return out;
}

}  // namespace

TEST(Helix, BaseRegions) {
  EXPECT_EQ(rendered_region(1), (std::vector<std::string>{"O_C(-1)"}));
  EXPECT_EQ(rendered_region(2), (std::vector<std::string>{"O_C(-1)", "O_{2C}"}));
  EXPECT_EQ(rendered_region(3),
            (std::vector<std::string>{"O_C(-1)", "O_{3C}", "O_{2C}", "w_{3C}(1)"}));
  EXPECT_EQ(rendered_region(5),
            (std::vector<std::string>{"O_C(-1)", "O_{5C}", "O_{4C}", "O_{3C}", "Z", "O_{2C}",
                                      "Z^w(1)", "w_{3C}(1)", "w_{4C}(1)", "w_{5C}(1)"}));
}

// Thickenings filter with one O_C and k-1 copies of O_C(-1); Z extends O_{2C}
// by O_{3C}.
TEST(Helix, KClassesFollowFiltrations) {
  for (Index k = 2; k <= 6; ++k)
    EXPECT_EQ(kclass(SheafExpr::thick(k)),
              kclass(SheafExpr::curve(0)) + (k - 1) * kclass(SheafExpr::curve(-1)));
  EXPECT_EQ(kclass(SheafExpr::zed()), kclass(SheafExpr::thick(2)) + kclass(SheafExpr::thick(3)));
  EXPECT_EQ(kclass(SheafExpr::zed_omega()), kclass(dualize(SheafExpr::zed()).shifted(-1)));
  // O_C(a+1) = O_C(a) + point
  for (Index a = -4; a <= 4; ++a)
    EXPECT_EQ(kclass(SheafExpr::curve(a + 1)) - kclass(SheafExpr::curve(a)), (KClass{0, 1}));
}

TEST(Helix, RewritesPreserveKClass) {
  const Base bases[] = {Base::CurveTwist, Base::Thick, Base::DualThick, Base::Zed, Base::ZedOmega};
  for (auto b : bases)
    for (Index k = 1; k <= 6; ++k)
      for (Index t = -3; t <= 3; ++t)
        for (Index s = -2; s <= 2; ++s) {
          const auto raw = SheafExpr::raw(b, k, t, s);
          EXPECT_EQ(kclass(raw), kclass(raw.normalized())) << raw.render();
          EXPECT_TRUE(raw.normalized().is_normal());
        }
}

TEST(Helix, SmallDualizingSheaves) {
  EXPECT_EQ(SheafExpr::dual_thick(1), SheafExpr::curve(-2));
  EXPECT_EQ(SheafExpr::dual_thick(2), SheafExpr::thick(2).twisted(-1));
  EXPECT_EQ(SheafExpr::thick(1), SheafExpr::curve(0));
  EXPECT_EQ(SheafExpr::thick(2).twisted(-1).render(), "O_{2C}(-1)");
}

TEST(Helix, DualityIsAnInvolutionCompatibleWithK) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> base(0, 4), k(1, 6), t(-5, 5), s(-3, 3);
  for (int n = 0; n < 500; ++n) {
    const auto e = SheafExpr::raw(static_cast<Base>(base(rng)), k(rng), t(rng), s(rng)).normalized();
    EXPECT_EQ(dualize(dualize(e)), e) << e.render();
    EXPECT_EQ(kclass(dualize(e)), kclass(e).dual()) << e.render();
  }
}

TEST(Helix, TranslationAndDualityAgree) {
  for (int ell = 1; ell <= 6; ++ell) {
    const Index n = numerics::for_length(ell).period();
    for (Index i = -3 * n; i <= 3 * n; ++i) {
      EXPECT_NO_THROW(simple_at(i, ell));
      EXPECT_EQ(simple_at(i + n, ell), simple_at(i, ell).twisted(1));
      EXPECT_EQ(simple_at(-i, ell), dualize(simple_at(i, ell)).shifted(-1));
    }
    const auto r = consistency_check(ell);
    EXPECT_TRUE(r.ok) << r.diagnostic;
  }
}

TEST(Helix, ClassesTrackRanksAndMultiplicities) {
  for (int ell = 1; ell <= 6; ++ell) {
    const auto h = numerics::for_length(ell);
    for (Index i = -2 * h.period(); i <= 2 * h.period(); ++i) {
      EXPECT_EQ(std::llabs(kclass(simple_at(i, ell)).c), h.rank_at(i));
      EXPECT_EQ(kclass(simple_at(i + 1, ell)) + kclass(simple_at(i - 1, ell)),
                h.n_at(i) * kclass(simple_at(i, ell)));
    }
  }
}

TEST(Helix, TiltSlotsFollowParity) {
  const auto t0 = tilt_descriptor(0, 3);
  EXPECT_EQ(t0.slot0, simple_at(-1, 3).shifted(1));
  EXPECT_EQ(t0.slot1, SheafExpr::curve(-1));
  const auto t1 = tilt_descriptor(1, 3);
  EXPECT_EQ(t1.slot0, SheafExpr::thick(3));
  EXPECT_EQ(t1.slot1, SheafExpr::curve(-1).shifted(1));
  EXPECT_EQ(t1.projective_ranks, (std::pair{1, 3}));
  for (int ell = 1; ell <= 6; ++ell)
    for (Index i = -20; i <= 20; ++i) EXPECT_NO_THROW(tilt_descriptor(i, ell));
}

TEST(Helix, MutationClassesOverSeveralPeriods) {
  for (int ell = 1; ell <= 6; ++ell) {
    const Index n = numerics::for_length(ell).period();
    for (Index i = -2 * n; i <= 2 * n; ++i) {
      const auto r = mutation_class_check(i, ell);
      EXPECT_TRUE(r.ok) << "l=" << ell << ": " << r.diagnostic;
    }
    const auto d = duality_closure_check(ell);
    EXPECT_TRUE(d.ok) << d.diagnostic;
  }
}

TEST(Helix, Validation) {
  EXPECT_THROW(SheafExpr::thick(4).validate(3), DomainError);
  EXPECT_THROW(SheafExpr::zed().validate(4), DomainError);
  EXPECT_NO_THROW(SheafExpr::zed().validate(6));
  EXPECT_THROW(SheafExpr::thick(0), DomainError);
  EXPECT_THROW(base_region(7), DomainError);
}

TEST(Helix, Json) {
  const auto j = SheafExpr::dual_thick(3).twisted(1).shifted(-1).to_json();
  EXPECT_EQ(j["base"], "w_kC");
  EXPECT_EQ(j["k_or_a"], 3);
  EXPECT_EQ(j["twist"], 1);
  EXPECT_EQ(j["shift"], -1);
}
