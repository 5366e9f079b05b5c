#include <gtest/gtest.h>

#include "matord/axioms.hpp"
#include "matord/structures.hpp"
#include "oracles.hpp"

using namespace matord;

namespace {

Mat e(int n, int i, int j) {
  Mat M = Mat::Zero(n, n);
  M(i, j) = 1.0;
  return M;
}

Vec unit(int d, int k) {
  Vec v = Vec::Zero(d);
  v(k) = 1.0;
  return v;
}

LeveledElement random_el(Rng& rng, int n, int d) {
  LeveledElement x(n, d);
  for (int k = 0; k < d; ++k) x.coord(k) = random_complex(rng, n, n);
  return x;
}

// sup over random unitaries u_k of ||sum_k X_k (x) u_k||: a lower bound for MAX over l_1^d
double max_l1_unitary_lower(const LeveledElement& x, Rng& rng, int trials) {
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int m = 1 + t % 3;
    Mat S = Mat::Zero(x.level() * m, x.level() * m);
    for (int k = 0; k < x.base_dim(); ++k) S += oracle::kron(x.coord(k), random_unitary(rng, m));
    best = std::max(best, oracle::singular_sum_p(S, kInf));
  }
  return best;
}

}  // namespace

TEST(MinNorm, CoordinateProjections) {
  MatricialStructure S(BaseSpace::lattice(2, kInf), Kind::Min);
  LeveledElement x = elementary(e(2, 0, 0), unit(2, 0)) + elementary(e(2, 1, 1), unit(2, 1));
  NormBracket b = level_norm(S, x);
  EXPECT_NEAR(b.lower, 1.0, 1e-12);
  EXPECT_NEAR(b.upper, 1.0, 1e-12);
}

TEST(MinNorm, LevelOneIsBaseNorm) {
  Rng rng(31);
  for (const BaseSpace& X :
       {BaseSpace::lattice(3, 1.0), BaseSpace::lattice(3, 2.0), BaseSpace::schatten(2, 1.0)}) {
    for (Kind k : {Kind::Min, Kind::Max}) {
      MatricialStructure S(X, k);
      for (int t = 0; t < 5; ++t) {
        LeveledElement x = random_el(rng, 1, X.dim);
        NormBracket b = level_norm(S, x);
        const double ref = base_norm(X, x.entry(0, 0));
        EXPECT_NEAR(b.lower, ref, 1e-9 * ref);
        EXPECT_NEAR(b.upper, ref, 1e-9 * ref);
      }
    }
  }
}

TEST(MinNorm, LinfClosedForm) {
  Rng rng(32);
  RVec w(2);
  w << 1.0, 2.5;
  MatricialStructure S(BaseSpace::lattice(2, kInf, w), Kind::Min);
  for (int t = 0; t < 50; ++t) {
    LeveledElement x = random_el(rng, 2, 2);
    double ref = 0.0;
    for (int k = 0; k < 2; ++k) ref = std::max(ref, w(k) * oracle::singular_sum_p(x.coord(k), kInf));
    NormBracket b = level_norm(S, x);
    EXPECT_LE(b.lower, ref * (1 + 1e-9));
    EXPECT_GE(b.upper, ref * (1 - 1e-9));
    EXPECT_NEAR(b.upper, ref, 1e-6 * ref);
  }
}

TEST(MinNorm, L1BracketContainsPhaseGrid) {
  Rng rng(33);
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Min);
  for (int t = 0; t < 20; ++t) {
    LeveledElement x = random_el(rng, 2, 2);
    double grid = 0.0;
    for (int a = 0; a < 256; ++a) {
      const cplx ph = std::polar(1.0, 2 * M_PI * a / 256);
      grid = std::max(grid, oracle::singular_sum_p(x.coord(0) + ph * x.coord(1), kInf));
    }
    NormBracket b = level_norm(S, x);
    EXPECT_LE(b.lower, b.upper);
    EXPECT_GE(b.upper, grid * (1 - 1e-9));
    EXPECT_NEAR(b.lower, grid, 1e-3 * grid);
  }
}

TEST(MinCone, Memberships) {
  Rng rng(34);
  MatricialStructure L(BaseSpace::lattice(3, 1.0), Kind::Min);
  EXPECT_TRUE(min_cone_member(L, elementary(random_psd(rng, 2), unit(3, 1)), 1e-9).member());

  for (double p : {1.0, 2.0, kInf}) {
    MatricialStructure S(BaseSpace::schatten(2, p), Kind::Min);
    EXPECT_TRUE(min_cone_member(S, flip_element(2), 1e-9).member()) << p;
  }

  LeveledElement x = elementary(Mat::Identity(2, 2), unit(3, 0));
  x.coord(2)(1, 1) = -0.5;
  ConeVerdict v = min_cone_member(L, x, 1e-9);
  ASSERT_TRUE(v.non_member());
  EXPECT_LT(v.certificate.value, 0.0);
}

TEST(MaxCone, LatticePhaseOne) {
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Max);
  LeveledElement x(std::vector<Mat>{oracle::mat2(1, 1, 1, 1), oracle::mat2(1, -1, -1, 1)});
  EXPECT_TRUE(max_cone_member(S, x, 1e-9).member());
  LeveledElement y(std::vector<Mat>{oracle::mat2(0, 1, 1, 0), Mat::Identity(2, 2)});
  EXPECT_TRUE(max_cone_member(S, y, 1e-9).non_member());
}

TEST(MaxCone, FlipOverSchattenIsFalsified) {
  MatricialStructure S(BaseSpace::schatten(2, 2.0), Kind::Max);
  ConeVerdict v = max_cone_member(S, flip_element(2), 1e-9);
  ASSERT_TRUE(v.non_member());
  EXPECT_NEAR(map_evaluation_min_eig(flip_element(2), v.certificate.map), v.certificate.value, 1e-9);
}

TEST(MaxNorm, ElementaryTensor) {
  Rng rng(35);
  for (double p : {1.0, 2.0, kInf}) {
    MatricialStructure S(BaseSpace::lattice(3, p), Kind::Max);
    for (int t = 0; t < 5; ++t) {
      Mat a = random_complex(rng, 2, 2);
      a /= oracle::singular_sum_p(a, kInf);
      Vec v = random_complex(rng, 3, 1).col(0);
      v /= base_norm(S.base(), v);
      NormBracket b = level_norm(S, elementary(a, v));
      EXPECT_GE(b.lower, 1.0 - 1e-6);
      EXPECT_LE(b.upper, 1.0 + 1e-6);
    }
  }
}

TEST(MaxNorm, BracketValidAndAboveUnitaryEvaluations) {
  Rng rng(36);
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Max, OptimizerConfig{8, 200});
  for (int t = 0; t < 200; ++t) {
    LeveledElement x = random_el(rng, 2, 2);
    NormBracket b = level_norm(S, x);
    ASSERT_LE(b.lower, b.upper * (1 + 1e-12));
    if (t < 20) EXPECT_GE(b.upper, max_l1_unitary_lower(x, rng, 30) * (1 - 1e-9));
  }
}

TEST(SchattenNorm, IdentityPatternAndFlip) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::Schatten);
  NormBracket d = level_norm(S, diagonal_pattern(2));
  EXPECT_NEAR(d.upper, 1.0, 1e-9);
  NormBracket f = level_norm(S, flip_element(2));
  EXPECT_NEAR(f.lower, 1.0, 1e-9);
  EXPECT_NEAR(f.upper, 1.0, 1e-9);
}

TEST(SchattenNorm, TwoNormAboveScaledFeasiblePoint) {
  Rng rng(37);
  const int n = 2, m = 2;
  MatricialStructure S(BaseSpace::schatten(m, 2.0), Kind::Schatten);
  for (int t = 0; t < 10; ++t) {
    LeveledElement x = hermitian_part(S.base(), random_el(rng, n, m * m));
    Mat R = oracle::realign(x, m);
    // a = b = I / n^{1/4} has ||.||_4 = 1
    const double feasible = oracle::singular_sum_p(R, 2.0) / std::sqrt(double(n));
    NormBracket b = level_norm(S, x);
    EXPECT_GE(b.lower, feasible * (1 - 1e-9));
    EXPECT_LE(b.lower, b.upper * (1 + 1e-12));
  }
}

TEST(SchattenCone, NaturalCone) {
  Rng rng(38);
  MatricialStructure S(BaseSpace::schatten(2, 1.0), Kind::Schatten);
  ConeVerdict v = cone_member(S, flip_element(2), 1e-9);
  ASSERT_TRUE(v.non_member());
  EXPECT_NEAR(v.certificate.value, -1.0, 1e-9);
  EXPECT_TRUE(cone_member(S, elementary(random_psd(rng, 2), from_square(random_psd(rng, 2))), 1e-9).member());
  EXPECT_TRUE(cone_member(S, LeveledElement(2, 4), 1e-9).member());
}

TEST(Ruan, ExactConfigurations) {
  const std::vector<MatricialStructure> configs = {
      MatricialStructure(BaseSpace::lattice(2, kInf), Kind::Min),
      MatricialStructure(BaseSpace::schatten(2, kInf), Kind::Schatten),
      MatricialStructure(BaseSpace::schatten(2, kInf), Kind::MatrixSystem)};
  for (const auto& S : configs) {
    RuanReport r = ruan_check(S, 500, 41);
    EXPECT_TRUE(r.passed()) << kind_name(S.kind());
    EXPECT_EQ(r.compression.undecided + r.direct_sum.undecided, 0);
  }
}

TEST(Ruan, DiagonalDirectSumIsExactForMinLinf) {
  MatricialStructure S(BaseSpace::lattice(2, kInf), Kind::Min);
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    LeveledElement x = random_el(rng, 1 + t % 2, 2), y = random_el(rng, 2, 2);
    const double lhs = level_norm(S, direct_sum(x, y)).upper;
    const double rhs = std::max(level_norm(S, x).upper, level_norm(S, y).upper);
    EXPECT_NEAR(lhs, rhs, 1e-9 * rhs);
    EXPECT_NEAR(level_norm(S, compress(Mat::Identity(2, 2), y, Mat::Identity(2, 2))).upper,
                level_norm(S, y).upper, 1e-12);
  }
}

TEST(ConeAxioms, AllKinds) {
  const std::vector<MatricialStructure> configs = {
      MatricialStructure(BaseSpace::lattice(2, kInf), Kind::Min),
      MatricialStructure(BaseSpace::lattice(2, 1.0), Kind::Max),
      MatricialStructure(BaseSpace::schatten(2, 2.0), Kind::Schatten),
      MatricialStructure(BaseSpace::schatten(2, kInf), Kind::MatrixSystem)};
  for (const auto& S : configs) {
    ConeAxiomReport r = cone_axiom_check(S, 200, 43);
    EXPECT_TRUE(r.passed()) << kind_name(S.kind());
  }
}

TEST(ConeAxioms, ZeroCompressionAndSums) {
  Rng rng(44);
  MatricialStructure S(BaseSpace::schatten(2, 2.0), Kind::Schatten);
  LeveledElement a = random_cone_element(S, 2, rng), b = random_cone_element(S, 2, rng);
  EXPECT_TRUE(cone_member(S, compress(Mat::Zero(2, 2), a, Mat::Zero(2, 2)), 1e-9).member());
  EXPECT_TRUE(cone_member(S, a + b, 1e-9).member());
}

TEST(Structures, InvalidCombinations) {
  EXPECT_THROW(MatricialStructure(BaseSpace::schatten(2, 2.0), Kind::MatrixSystem), Error);
  EXPECT_THROW(MatricialStructure(BaseSpace::lattice(2, 1.0), Kind::Schatten), Error);
  EXPECT_THROW(parse_kind("banana"), Error);
  EXPECT_EQ(parse_kind("matsys"), Kind::MatrixSystem);
}
