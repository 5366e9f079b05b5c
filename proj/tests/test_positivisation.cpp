#include <gtest/gtest.h>

#include "matord/positivisation.hpp"
#include "oracles.hpp"

using namespace matord;

TEST(AlphaPlus, MatrixSystemFixedPoint) {
  Rng rng(71);
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 2;
    LeveledElement x = random_element(S.base(), n, rng);
    const double a = oracle::singular_sum_p(oracle::realign(x, 2), kInf);
    PositivisationResult r = alpha_plus(S, x, 10, 72 + t);
    EXPECT_NEAR(r.value_upper, a, 1e-3);
    EXPECT_NEAR(r.value_lower, a, 1e-3);
    EXPECT_LE(r.value_lower, r.value_upper);
  }
}

TEST(AlphaPlus, ZeroIsZero) {
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Min);
  PositivisationResult r = alpha_plus(S, LeveledElement(2, 2), 10, 1);
  EXPECT_EQ(r.value_upper, 0.0);
  EXPECT_EQ(r.value_lower, 0.0);
}

TEST(AlphaPlus, ScalesWithTheNorm) {
  Rng rng(73);
  MatricialStructure S(BaseSpace::lattice(2, kInf), Kind::Min, OptimizerConfig{8, 200});
  MatricialStructure S2 = S.scaled(2.0);
  for (int t = 0; t < 3; ++t) {
    LeveledElement x = random_element(S.base(), 2, rng);
    PositivisationResult a = alpha_plus(S, x, 10, 74);
    PositivisationResult b = alpha_plus(S2, x, 10, 74);
    EXPECT_NEAR(b.value_upper, 2.0 * a.value_upper, 1e-9 * a.value_upper);
    EXPECT_LE(b.value_lower, b.value_upper * (1 + 1e-9));
  }
}

TEST(AlphaPlus, ConeMembersDoNotGrow) {
  Rng rng(75);
  for (const MatricialStructure& S :
       {MatricialStructure(BaseSpace::lattice(2, 1.0), Kind::Min),
        MatricialStructure(BaseSpace::schatten(2, 2.0), Kind::Schatten)}) {
    for (int t = 0; t < 5; ++t) {
      LeveledElement x = random_cone_element(S, 2, rng);
      PositivisationResult r = alpha_plus(S, x, 10, 76);
      EXPECT_LE(r.value_upper, level_norm(S, x).upper * (1 + 1e-9));
    }
  }
}

TEST(AlphaPlus, CompletionIsCertified) {
  Rng rng(77);
  MatricialStructure S(BaseSpace::lattice(2, kInf), Kind::Min);
  LeveledElement x = random_element(S.base(), 2, rng);
  PositivisationResult r = alpha_plus(S, x, 10, 78);
  EXPECT_TRUE(verify_witness(S, x, r.completion).ok());
  EXPECT_NEAR(r.completion.value, r.value_upper, 1e-12);
}

TEST(AlphaPlusProperties, MatrixSystem) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  AlphaPlusProperties p = alpha_plus_properties(S, 2, 20, 79);
  EXPECT_TRUE(p.passed());
  EXPECT_LE(p.idempotence_gap, 1e-6);
}

TEST(AlphaPlusProperties, MinOverLinf) {
  MatricialStructure S(BaseSpace::lattice(2, kInf), Kind::Min, OptimizerConfig{8, 200});
  AlphaPlusProperties p = alpha_plus_properties(S, 2, 6, 80);
  EXPECT_TRUE(p.passed());
  EXPECT_LE(p.idempotence_gap, 5e-3);
}

TEST(Renorm, MatrixSystemAndScaled) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  RenormReport r = renorm_bounds_check(S, 2, 20, 81, 1.0, 1.0);
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.worst_upper_ratio, 1.0, 1e-3);
  EXPECT_TRUE(renorm_bounds_check(S.scaled(3.0), 2, 10, 82, 1.0, 1.0).passed());
}
