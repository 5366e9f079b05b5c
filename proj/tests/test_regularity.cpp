#include <gtest/gtest.h>

#include "matord/regularity.hpp"
#include "oracles.hpp"

using namespace matord;

namespace {

Vec vec(std::initializer_list<cplx> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(NormalityProbe, MatrixSystemNeverExceedsOne) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  NormalityProbe p = normality_probe(S, 2, 300, 51);
  EXPECT_EQ(p.samples, 300);
  EXPECT_LE(p.bound, 1.0 + 1e-6);
  EXPECT_GE(p.bound, 0.9);
}

TEST(NormalityProbe, SchattenTwo) {
  MatricialStructure S(BaseSpace::schatten(2, 2.0), Kind::Schatten);
  NormalityProbe p = normality_probe(S, 2, 200, 52);
  EXPECT_LE(p.bound, 1.0 + 1e-3);
}

TEST(NormalityProbe, MinOverLinf) {
  MatricialStructure S(BaseSpace::lattice(3, kInf), Kind::Min);
  NormalityProbe p = normality_probe(S, 2, 300, 53);
  EXPECT_LE(p.bound, 1.0 + 1e-6);
  // the probe's reported triple reproduces the bound
  ConeVerdict block = cone_member(S, block2(p.u1, p.u, adjoint(S.base(), p.u), p.u2), 1e-8);
  EXPECT_FALSE(block.non_member());
}

TEST(GenerationWitness, MatrixSystemIsExact) {
  Rng rng(54);
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  for (int t = 0; t < 20; ++t) {
    LeveledElement x = random_hermitian_element(S.base(), 2, rng);
    const double ref = oracle::singular_sum_p(oracle::realign(x, 2), kInf);
    BlockWitness w = generation_witness(S, x);
    EXPECT_NEAR(w.value, ref, 1e-9 * ref);
    EXPECT_TRUE(verify_witness(S, x, w).ok());
  }
}

TEST(GenerationWitness, MemberAndZero) {
  Rng rng(55);
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Min);
  LeveledElement x = random_cone_element(S, 2, rng);
  BlockWitness w = generation_witness(S, x);
  EXPECT_EQ(oracle::max_abs_diff(w.x1, x), 0.0);
  EXPECT_EQ(oracle::max_abs_diff(w.x2, x), 0.0);
  EXPECT_NEAR(w.value, level_norm(S, x).upper, 1e-12);

  BlockWitness z = generation_witness(S, LeveledElement(2, 2));
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(z.x1.max_abs(), 0.0);
}

TEST(GenerationWitness, SchattenWithinAlpha) {
  Rng rng(56);
  for (double p : {1.0, 2.0, kInf}) {
    MatricialStructure S(BaseSpace::schatten(2, p), Kind::Schatten);
    for (int t = 0; t < 5; ++t) {
      LeveledElement x = random_element(S.base(), 2, rng);
      BlockWitness w = generation_witness(S, x);
      EXPECT_TRUE(verify_witness(S, x, w).ok());
      EXPECT_LE(w.value, level_norm(S, x).lower * (1 + 1e-6)) << p;
    }
  }
}

TEST(GenerationWitness, LatticeMinAndMax) {
  Rng rng(57);
  for (Kind k : {Kind::Min, Kind::Max}) {
    MatricialStructure S(BaseSpace::lattice(2, 1.0), k, OptimizerConfig{8, 200});
    for (int t = 0; t < 5; ++t) {
      LeveledElement x = random_element(S.base(), 2, rng);
      BlockWitness w = generation_witness(S, x);
      EXPECT_TRUE(verify_witness(S, x, w).ok());
      EXPECT_GE(w.value, level_norm(S, x).lower * (1 - 1e-6));
    }
  }
}

TEST(MaxNice, ClosedFormCases) {
  BaseSpace X = BaseSpace::lattice(2, kInf);
  MaxNiceDecomposition a = max_nice_decompose(X, vec({1, -1}));
  EXPECT_EQ(a.xi, vec({1, -1}));
  EXPECT_EQ(a.eta, vec({1, 1}));
  EXPECT_DOUBLE_EQ(a.xi_sum_norm, 1.0);
  EXPECT_DOUBLE_EQ(a.eta_sum_norm, 1.0);
  EXPECT_EQ(a.residual, 0.0);

  MaxNiceDecomposition b = max_nice_decompose(X, vec({2, 0.5}));
  EXPECT_EQ(b.xi, vec({1, 1}));
  EXPECT_EQ(b.x[0], vec({2, 0}));
  EXPECT_EQ(b.x[1], vec({0, 0.5}));

  MaxNiceDecomposition c = max_nice_decompose(X, vec({cplx(0, 1), 0}));
  EXPECT_EQ(c.xi(0), cplx(0, 1));
  EXPECT_EQ(c.residual, 0.0);
  EXPECT_THROW(max_nice_decompose(BaseSpace::schatten(2, 1.0), Vec::Zero(4)), Error);
}

TEST(MinNice, GridCriterion) {
  Rng rng(58);
  for (int t = 0; t < 100; ++t) {
    Vec x = random_complex(rng, 3, 1).col(0);
    Vec ax = x.cwiseAbs().cast<cplx>();
    EXPECT_TRUE(min_nice_grid_holds(x, ax, ax));
    // |x_k| <= sqrt(a_k b_k) with a_k b_k = |x_k|^2 s_k, s_k >= 1
    Vec a(3), b(3);
    for (int k = 0; k < 3; ++k) {
      const double r = 0.1 + 3 * uniform01(rng), s = 1.0 + uniform01(rng);
      a(k) = std::abs(x(k)) * r * s;
      b(k) = std::abs(x(k)) / r;
    }
    EXPECT_TRUE(min_nice_grid_holds(x, a, b));
    b(t % 3) *= 0.5 / (a(t % 3).real() * b(t % 3).real() / std::norm(x(t % 3)));
    EXPECT_FALSE(min_nice_grid_holds(x, a, b));
  }
}

TEST(MinNice, CheckReport) {
  MinNiceReport r = min_nice_check(BaseSpace::lattice(3, 2.0), 200, 59);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.planted_violators, 0);
}

TEST(CbcCb, IdentityAndCompression) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  CbcCbReport id = cbc_cb_compare(S, S, Mat::Identity(4, 4), 2, 20, 60);
  EXPECT_NEAR(id.cbc_lower, 1.0, 1e-9);
  EXPECT_NEAR(id.cb_lower, 1.0, 1e-9);
  EXPECT_TRUE(id.sandwich_holds);

  Mat diag = Mat::Zero(4, 4);
  diag(0, 0) = diag(3, 3) = 1.0;
  CbcCbReport d = cbc_cb_compare(S, S, diag, 2, 20, 61);
  EXPECT_TRUE(d.sandwich_holds);
  EXPECT_LE(d.cb_lower, 1.0 + 1e-9);
}

TEST(CbcCb, TransposeIsNotCompletelyPositive) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  Mat T = Mat::Zero(4, 4);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) T(l * 2 + k, k * 2 + l) = 1.0;
  try {
    cbc_cb_compare(S, S, T, 2, 20, 62);
    FAIL() << "transpose accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCompletelyPositive);
  }
}
