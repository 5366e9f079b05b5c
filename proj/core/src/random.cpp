#include "matord/random.hpp"

#include <cmath>

namespace matord {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double normal01(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

cplx complex_normal(Rng& rng) {
  double re = normal01(rng);
  double im = normal01(rng);
  return {re, im};
}

Mat random_complex(Rng& rng, int rows, int cols) {
  Mat M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = complex_normal(rng);
  return M;
}

Mat random_real(Rng& rng, int rows, int cols) {
  Mat M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = normal01(rng);
  return M;
}

Vec random_unit_vector(Rng& rng, int n) {
  Vec v = random_complex(rng, n, 1).col(0);
  return v / v.norm();
}

Mat random_hermitian(Rng& rng, int n) { return hermitian_part(random_complex(rng, n, n)); }

Mat random_psd(Rng& rng, int n, int rank) {
  if (rank <= 0 || rank > n) rank = n;
  Mat G = random_complex(rng, n, rank);
  return G * G.adjoint();
}

Mat random_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<Mat> qr(random_complex(rng, n, n));
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases so the distribution is Haar
  for (int i = 0; i < n; ++i) {
    cplx d = R(i, i);
    double a = std::abs(d);
    if (a > 0) Q.col(i) *= d / a;
  }
  return Q;
}

Mat random_orthogonal(Rng& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_real(rng, n, n).real());
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (R(i, i) < 0) Q.col(i) *= -1.0;
  return Q.cast<cplx>();
}

Mat random_contraction(Rng& rng, int rows, int cols) {
  Mat M = random_complex(rng, rows, cols);
  double s = schatten_norm(M, kInf);
  return s > 0 ? Mat(M / s) : M;
}

}  // namespace matord
