#include <gtest/gtest.h>

#include "matord/base_space.hpp"
#include "matord/linalg.hpp"
#include "matord/random.hpp"
#include "oracles.hpp"

using namespace matord;

TEST(MinEigenvalue, IdentityDiagonalAndSwap) {
  EXPECT_DOUBLE_EQ(min_eigenvalue(Mat::Identity(2, 2)), 1.0);
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = -2.0;
  EXPECT_DOUBLE_EQ(min_eigenvalue(D), -2.0);
  EXPECT_NEAR(min_eigenvalue(oracle::swap(2)), -1.0, 1e-12);
}

TEST(MinEigenvalue, AgreesWithGeneralSolver) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    Mat H = random_hermitian(rng, 1 + t % 6);
    EXPECT_NEAR(min_eigenvalue(H), oracle::min_eig(H), 1e-9);
  }
}

TEST(MinEigenvalue, RejectsBadInput) {
  Mat M = Mat::Zero(2, 2);
  M(0, 1) = 1.0;
  EXPECT_THROW(min_eigenvalue(M), Error);
  Mat N = Mat::Identity(2, 2);
  N(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(min_eigenvalue(N), Error);
  EXPECT_THROW(min_eigenvalue(Mat::Zero(2, 3)), Error);
}

TEST(IsPsd, SmallCases) {
  EXPECT_TRUE(is_psd(Mat::Identity(2, 2), 1e-9));
  EXPECT_FALSE(is_psd(-Mat::Identity(2, 2), 1e-9));
  EXPECT_TRUE(is_psd(Mat::Ones(2, 2), 1e-9));
}

TEST(Adjoint, RealLevelOneAndOffDiagonal) {
  LeveledElement x(1, 2);
  x.coord(0)(0, 0) = 1.0;
  x.coord(1)(0, 0) = 2.0;
  LeveledElement y = adjoint(x, Involution::CoordinateConjugation);
  EXPECT_EQ(oracle::max_abs_diff(x, y), 0.0);

  Vec v(2);
  v << cplx(1, 2), cplx(-3, 0.5);
  Mat e12 = Mat::Zero(2, 2);
  e12(0, 1) = 1.0;
  LeveledElement z = adjoint(elementary(e12, v), Involution::CoordinateConjugation);
  EXPECT_EQ(z.entry(1, 0), v.conjugate());
  EXPECT_EQ(z.entry(0, 1), Vec::Zero(2));
}

TEST(Adjoint, IsAnInvolution) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    LeveledElement x(3, 4);
    for (int k = 0; k < 4; ++k) x.coord(k) = random_complex(rng, 3, 3);
    for (auto inv : {Involution::CoordinateConjugation, Involution::MatrixAdjoint}) {
      LeveledElement y = adjoint(adjoint(x, inv, 2), inv, 2);
      EXPECT_LT(oracle::max_abs_diff(x, y), 1e-15);
    }
  }
}

TEST(Compress, IdentityRowAndNaiveLoop) {
  Rng rng(9);
  LeveledElement x(2, 9);
  for (int t = 0; t < 9; ++t) x.coord(t) = random_complex(rng, 2, 2);
  EXPECT_EQ(oracle::max_abs_diff(compress(Mat::Identity(2, 2), x, Mat::Identity(2, 2)), x), 0.0);

  Mat row = Mat::Zero(1, 2);
  row(0, 1) = 1.0;
  LeveledElement c = compress(row, x, row);
  ASSERT_EQ(c.level(), 1);
  EXPECT_EQ(c.entry(0, 0), x.entry(1, 1));

  for (int t = 0; t < 20; ++t) {
    Mat a = random_complex(rng, 3, 2), b = random_complex(rng, 3, 2);
    EXPECT_LT(oracle::max_abs_diff(compress(a, x, b), oracle::compress(a, x, b)), 1e-12);
  }
}

TEST(DirectSum, PaddingZeroAndAssociativity) {
  Rng rng(3);
  auto rand_el = [&](int n) {
    LeveledElement x(n, 2);
    for (int t = 0; t < 2; ++t) x.coord(t) = random_complex(rng, n, n);
    return x;
  };
  LeveledElement x = rand_el(2);
  LeveledElement padded = direct_sum(x, LeveledElement(1, 2));
  for (int t = 0; t < 2; ++t) {
    EXPECT_EQ(padded.coord(t).topLeftCorner(2, 2), x.coord(t));
    EXPECT_EQ(padded.coord(t).row(2).cwiseAbs().sum(), 0.0);
    EXPECT_EQ(padded.coord(t).col(2).cwiseAbs().sum(), 0.0);
  }
  LeveledElement zz = direct_sum(LeveledElement(1, 2), LeveledElement(2, 2));
  EXPECT_EQ(zz.max_abs(), 0.0);
  for (int t = 0; t < 20; ++t) {
    LeveledElement a = rand_el(1), b = rand_el(2), c = rand_el(1);
    EXPECT_EQ(oracle::max_abs_diff(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c))), 0.0);
  }
}

TEST(Realign, RankOneFlipAndTensor) {
  Mat e11 = Mat::Zero(2, 2);
  e11(0, 0) = 1.0;
  Vec v = Vec::Zero(4);
  v(0) = 1.0;
  Mat R = realign_schatten(elementary(e11, v), 2);
  EXPECT_EQ(R(0, 0), cplx(1.0));
  EXPECT_EQ(R.cwiseAbs().sum(), 1.0);

  LeveledElement F(2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) F.coord(j * 2 + i)(i, j) = 1.0;
  EXPECT_EQ(realign_schatten(F, 2), oracle::swap(2));
  EXPECT_NEAR(min_eigenvalue(realign_schatten(F, 2)), -1.0, 1e-12);

  Rng rng(4);
  Mat a = random_psd(rng, 2), p = random_psd(rng, 3);
  Mat Rt = realign_schatten(elementary(a, from_square(p)), 3);
  EXPECT_LT((Rt - oracle::kron(a, p)).norm(), 1e-12);
  EXPECT_GE(oracle::min_eig(Rt), -1e-10);
}

TEST(Realign, MatchesLoopAndInverts) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    LeveledElement x(3, 4);
    for (int k = 0; k < 4; ++k) x.coord(k) = random_complex(rng, 3, 3);
    Mat R = realign_schatten(x, 2);
    EXPECT_EQ(R, oracle::realign(x, 2));
    EXPECT_EQ(oracle::max_abs_diff(unrealign_schatten(R, 3, 2), x), 0.0);
  }
}

TEST(FlipConjugate, IdentityPatternInvolutionAndFlip) {
  LeveledElement id(2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) id.coord(i * 2 + j)(i, j) = 1.0;
  EXPECT_GE(oracle::min_eig(flip_conjugate(id, 2)), -1e-12);

  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    LeveledElement x(2, 9);
    for (int k = 0; k < 9; ++k) x.coord(k) = random_complex(rng, 2, 2);
    Mat once = flip_conjugate(x, 3);
    EXPECT_LT((flip_conjugate(once, 3, 2) - realign_schatten(x, 3)).norm(), 1e-13);
  }

  LeveledElement F(2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) F.coord(j * 2 + i)(i, j) = 1.0;
  EXPECT_NEAR(oracle::min_eig(flip_conjugate(F, 2)), -1.0, 1e-12);
}

TEST(SchattenNorm, IdentityAndFrobenius) {
  Mat I = Mat::Identity(3, 3);
  EXPECT_NEAR(schatten_norm(I, 1.0), 3.0, 1e-12);
  EXPECT_NEAR(schatten_norm(I, kInf), 1.0, 1e-12);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    Mat M = random_complex(rng, 3, 4);
    EXPECT_NEAR(std::pow(schatten_norm(M, 2.0), 2), M.cwiseAbs2().sum(), 1e-10);
    for (double p : {1.0, 1.5, 3.0, kInf})
      EXPECT_NEAR(schatten_norm(M, p), oracle::singular_sum_p(M, p), 1e-10);
  }
}

TEST(SchattenNorm, NormingMatrixAttainsDualNorm) {
  Rng rng(21);
  for (double r : {1.0, 2.0, 3.0, kInf}) {
    Mat G = random_complex(rng, 3, 3);
    Mat X = schatten_norming(G, r);
    EXPECT_LE(schatten_norm(X, r), 1.0 + 1e-10);
    EXPECT_NEAR((X * G).trace().real(), schatten_norm(G, conjugate_exponent(r)), 1e-9);
  }
}

TEST(Kron, MatchesLoop) {
  Rng rng(1);
  Mat a = random_complex(rng, 2, 3), b = random_complex(rng, 3, 2);
  EXPECT_LT((kron(a, b) - oracle::kron(a, b)).norm(), 1e-14);
}
