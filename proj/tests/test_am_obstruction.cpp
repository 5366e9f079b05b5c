#include <gtest/gtest.h>

#include <cmath>

#include "matord/am_obstruction.hpp"
#include "oracles.hpp"

using namespace matord;

namespace {

// E over xi on the real unit circle of <xi|A|xi>, by exact trapezoid quadrature
// (the integrand is a trigonometric polynomial of degree 2).
double circle_average(const Mat& A) {
  double acc = 0.0;
  const int K = 64;
  for (int j = 0; j < K; ++j) {
    const double th = 2 * M_PI * j / K;
    Vec xi(2);
    xi << std::cos(th), std::sin(th);
    acc += (xi.adjoint() * A * xi)(0, 0).real();
  }
  return acc / K;
}

}  // namespace

TEST(SymmetricFamily, Properties) {
  for (int n : {1, 2, 3}) {
    const int N = n == 3 ? 4 : 2;
    std::vector<Mat> U = symmetric_orthogonal_family(n, N, 1);
    ASSERT_EQ(static_cast<int>(U.size()), n);
    for (int i = 0; i < n; ++i) {
      EXPECT_LT((U[i] - U[i].adjoint()).norm(), 1e-14);
      EXPECT_LT((U[i] * U[i] - Mat::Identity(N, N)).norm(), 1e-14);
      EXPECT_LT(U[i].imag().norm(), 1e-15);
      for (int j = 0; j < i; ++j) EXPECT_LT(std::abs((U[i] * U[j]).trace()), 1e-12);
    }
  }
  EXPECT_THROW(symmetric_orthogonal_family(5, 2, 1), Error);
}

TEST(AmObstruction, TwoByTwoPauliPair) {
  AmObstructionReport r = am_obstruction(BaseSpace::lattice(2, 1.0), 2, 2, 200, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.bound, std::sqrt(2.0) / 2 - 1e-6);
  EXPECT_EQ(r.averaging.rfind("circle", 0), 0u) << r.averaging;
  EXPECT_GT(r.dominating, r.samples / 4);
  EXPECT_EQ(r.expectation_ok, r.dominating);
}

TEST(AmObstruction, DegenerateSingleCoordinate) {
  AmObstructionReport r = am_obstruction(BaseSpace::lattice(1, 1.0), 1, 2, 50, 4);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.bound, 0.5);
}

TEST(AmObstruction, ExpectationMonotone) {
  // a >= |U_i| gives E<xi|a|xi> >= E<xi||U_i||xi> = 1 for N = 2
  Rng rng(5);
  Mat Z = oracle::mat2(1, 0, 0, -1), X = oracle::mat2(0, 1, 1, 0);
  for (const Mat& U : {Z, X}) {
    Mat absU = Mat::Identity(2, 2);
    EXPECT_NEAR(circle_average(absU), 1.0, 1e-12);
    for (int t = 0; t < 20; ++t) {
      Mat a = absU + random_psd(rng, 2);
      EXPECT_GE(oracle::min_eig(a - U), -1e-12);
      EXPECT_GE(circle_average(a), 1.0 - 1e-12);
    }
  }
}
