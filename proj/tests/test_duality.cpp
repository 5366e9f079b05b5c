#include <gtest/gtest.h>

#include "matord/duality.hpp"
#include "oracles.hpp"

using namespace matord;

namespace {

bool all_coordinates_psd(const LeveledElement& x) {
  for (int k = 0; k < x.base_dim(); ++k)
    if (oracle::min_eig(x.coord(k)) < -1e-9) return false;
  return true;
}

// hermitian element whose coordinates are PSD about half the time
LeveledElement borderline_hermitian(Rng& rng, int n, int d) {
  LeveledElement x(n, d);
  for (int k = 0; k < d; ++k) {
    Mat a = random_psd(rng, n, 1 + static_cast<int>(rng() % n));
    x.coord(k) = a - (uniform01(rng) < 0.15 ? 2.0 : 0.0) * random_psd(rng, n, 1);
  }
  return x;
}

}  // namespace

TEST(Pairing, ScalarAndElementary) {
  LeveledElement a(1, 1), b(1, 1);
  a.coord(0)(0, 0) = cplx(2, 1);
  b.coord(0)(0, 0) = cplx(0, 3);
  Mat P = pairing(a, b);
  ASSERT_EQ(P.rows(), 1);
  EXPECT_EQ(P(0, 0), cplx(2, 1) * cplx(0, 3));

  Rng rng(91);
  Mat A = random_complex(rng, 2, 2), B = random_complex(rng, 3, 3);
  Vec v = random_complex(rng, 4, 1).col(0), f = random_complex(rng, 4, 1).col(0);
  Mat Q = pairing(elementary(B, f), elementary(A, v));
  Mat ref = (f.array() * v.array()).sum() * oracle::kron(A, B);
  EXPECT_LT((Q - ref).norm(), 1e-12);
}

TEST(Pairing, HermitianPairsGiveHermitianMatrices) {
  Rng rng(92);
  for (const BaseSpace& X : {BaseSpace::lattice(3, 1.0), BaseSpace::schatten(2, 2.0)}) {
    for (int t = 0; t < 50; ++t) {
      LeveledElement x = random_hermitian_element(X, 2, rng);
      LeveledElement y = random_hermitian_element(dual(X), 3, rng);
      Mat P = pairing(y, x);
      EXPECT_LT((P - P.adjoint()).norm(), 1e-12 * (1 + P.norm()));
    }
  }
}

TEST(DualStructure, KindsAndScale) {
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Max, {}, 2.0);
  MatricialStructure D = dual_structure(S);
  EXPECT_EQ(D.kind(), Kind::Min);
  EXPECT_EQ(D.base().p, kInf);
  EXPECT_DOUBLE_EQ(D.scale(), 0.5);
  EXPECT_EQ(dual_structure(D).kind(), Kind::Max);
  MatricialStructure M(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  EXPECT_EQ(dual_structure(M).kind(), Kind::Schatten);
  EXPECT_EQ(dual_structure(M).base().p, 1.0);
}

TEST(DualCone, LatticeAgreesWithCoordinatewisePsd) {
  Rng rng(93);
  int members = 0, non_members = 0;
  for (Kind k : {Kind::Max, Kind::Min}) {
    MatricialStructure S(BaseSpace::lattice(2, 1.0), k);
    for (int t = 0; t < 200; ++t) {
      LeveledElement y = borderline_hermitian(rng, 2, 2);
      ConeVerdict v = dual_cone_member(S, y);
      ASSERT_NE(v.verdict, Verdict::Undecided);
      EXPECT_EQ(v.member(), all_coordinates_psd(y));
      (v.member() ? members : non_members)++;
    }
  }
  EXPECT_GT(members, 50);
  EXPECT_GT(non_members, 50);
}

TEST(DualCone, SchattenMatchesFlipConjugate) {
  Rng rng(94);
  for (double p : {1.0, 2.0, kInf}) {
    MatricialStructure S(BaseSpace::schatten(2, p), Kind::Schatten);
    for (int t = 0; t < 50; ++t) {
      LeveledElement y = t % 2 ? unrealign_schatten(random_psd(rng, 4, 2), 2, 2)
                               : random_hermitian_element(dual(S.base()), 2, rng);
      const bool ref = oracle::min_eig(flip_conjugate(y, 2)) >= -1e-9;
      EXPECT_EQ(dual_cone_member(S, y).member(), ref);
    }
  }
  EXPECT_TRUE(dual_cone_member(MatricialStructure(BaseSpace::schatten(2, 2.0), Kind::Schatten),
                               flip_element(2))
                  .non_member());
}

TEST(DualCone, MembersPairPositively) {
  Rng rng(95);
  MatricialStructure S(BaseSpace::schatten(2, 2.0), Kind::Schatten);
  for (int t = 0; t < 20; ++t) {
    LeveledElement y = unrealign_schatten(random_psd(rng, 4), 2, 2);
    ASSERT_TRUE(dual_cone_member(S, y).member());
    for (int s = 0; s < 5; ++s) {
      LeveledElement x = random_cone_element(S, 1 + s % 3, rng);
      Mat P = pairing(y, x);
      EXPECT_GE(oracle::min_eig(P), -1e-9 * (1 + P.norm()));
    }
  }
  LeveledElement bad = flip_element(2);
  EXPECT_TRUE(dual_cone_sampled(S, bad, 50, 96).non_member());
}

TEST(DualCone, RejectsNonHermitian) {
  Rng rng(97);
  MatricialStructure S(BaseSpace::lattice(2, 1.0), Kind::Min);
  LeveledElement y = random_element(dual(S.base()), 2, rng);
  EXPECT_THROW(dual_cone_member(S, y), Error);
}

TEST(Products, ZeroOffDiagonalAndTensorBlocks) {
  Rng rng(98);
  BaseSpace X = BaseSpace::lattice(2, 1.0);
  Mat a = random_psd(rng, 2), b = random_psd(rng, 2);
  Vec g = Vec::Ones(2);
  LeveledElement primal = elementary(block_diag(a, b), g);
  LeveledElement dual_el = elementary(block_diag(b, a), g);
  EXPECT_GE(oracle::min_eig(products_block(primal, dual_el)), -1e-10);
  Mat P = Mat::Zero(4, 4);
  P.topLeftCorner(2, 2) = a;
  P.bottomRightCorner(2, 2) = a;
  P.topRightCorner(2, 2) = a;
  P.bottomLeftCorner(2, 2) = a;
  EXPECT_GE(oracle::min_eig(products_block(elementary(P, g), elementary(P, g))), -1e-10);

  ProductsReport r = products_check(60, 99);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.trials, 60);
}

TEST(GenNormalDuality, SchattenTwoAndLattice) {
  EXPECT_TRUE(gen_normal_duality_probe(MatricialStructure(BaseSpace::schatten(2, 2.0), Kind::Schatten), 2,
                                       30, 100)
                  .passed());
  EXPECT_TRUE(gen_normal_duality_probe(MatricialStructure(BaseSpace::lattice(2, kInf), Kind::Min), 2, 20,
                                       101, 1.0, 1e-6)
                  .passed());
  EXPECT_TRUE(gen_normal_duality_probe(MatricialStructure(BaseSpace::lattice(2, 1.0), Kind::Min), 1, 20,
                                       102)
                  .passed());
}
