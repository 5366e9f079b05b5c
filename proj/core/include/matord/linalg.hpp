#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "matord/errors.hpp"

namespace matord {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Default PSD tolerance, relative to the trace norm of the tested matrix.
inline constexpr double kDefaultPsdTol = 1e-9;
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kSqrtClamp = -1e-12;

enum class Involution { CoordinateConjugation, MatrixAdjoint };

// x = sum_{ij} E_ij (x) x_ij with x_ij in C^d, stored as the d coordinate
// matrices X_k = ([x_ij]_k)_ij.
class LeveledElement {
 public:
  LeveledElement() = default;
  LeveledElement(int level, int base_dim);
  explicit LeveledElement(std::vector<Mat> coordinates);

  int level() const { return n_; }
  int base_dim() const { return d_; }

  const Mat& coord(int k) const { return coords_[k]; }
  Mat& coord(int k) { return coords_[k]; }
  const std::vector<Mat>& coords() const { return coords_; }

  Vec entry(int i, int j) const;
  void set_entry(int i, int j, const Vec& v);

  bool is_finite() const;
  double max_abs() const;

  LeveledElement& operator+=(const LeveledElement& o);
  LeveledElement& operator-=(const LeveledElement& o);
  LeveledElement& operator*=(cplx s);

 private:
  int n_ = 0;
  int d_ = 0;
  std::vector<Mat> coords_;
};

LeveledElement operator+(LeveledElement a, const LeveledElement& b);
LeveledElement operator-(LeveledElement a, const LeveledElement& b);
LeveledElement operator*(cplx s, LeveledElement a);
LeveledElement operator*(double s, LeveledElement a);

// a (x) v
LeveledElement elementary(const Mat& a, const Vec& v);

struct HermitianSpectrum {
  RVec values;  // ascending
  Mat vectors;
};

// Throws NonFinite / NonHermitian / DimensionMismatch.
HermitianSpectrum hermitian_eigen(const Mat& M);
double min_eigenvalue(const Mat& M);
bool is_psd(const Mat& M, double tol);
// min eigenvalue >= -rel_tol * ||M||_1
bool is_psd_relative(const Mat& M, double rel_tol = kDefaultPsdTol);
bool is_hermitian_matrix(const Mat& M, double rel_tol = kHermiticityTol);
double max_abs_entry(const Mat& M);

Mat hermitian_part(const Mat& M);
Mat psd_sqrt(const Mat& M);
Mat psd_inverse_sqrt(const Mat& M, double floor);
Mat hermitian_abs(const Mat& H);
// (A A*)^{1/2} and (A* A)^{1/2}
Mat abs_left(const Mat& A);
Mat abs_right(const Mat& A);
Mat polar_unitary(const Mat& A);

RVec singular_values(const Mat& M);
double schatten_norm(const Mat& M, double p);
double conjugate_exponent(double p);
double lp_norm(const RVec& v, double p);
// w >= 0 with ||w||_{p'} = 1 and <w, |s|> = ||s||_p
RVec holder_weights(const RVec& s, double p);
// maximiser of Re tr(X G) over ||X||_r <= 1; the value is ||G||_{r'}
Mat schatten_norming(const Mat& G, double r);

Mat kron(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);
// Tr over the second tensor factor of an (n*m)x(n*m) matrix
Mat partial_trace_second(const Mat& Y, int n, int m);
Mat partial_transpose_second(const Mat& R, int n, int m);

LeveledElement adjoint(const LeveledElement& x, Involution inv, int m = 0);
LeveledElement compress(const Mat& a, const LeveledElement& x, const Mat& b);
LeveledElement direct_sum(const LeveledElement& x, const LeveledElement& y);
// 2x2 block element [[x11, x12], [x21, x22]]
LeveledElement block2(const LeveledElement& x11, const LeveledElement& x12,
                      const LeveledElement& x21, const LeveledElement& x22);
LeveledElement sub_block(const LeveledElement& x, int row0, int col0, int size);

// rows (i,k), columns (j,l): entry [x_ij]_kl, with d = m^2 and index k*m+l.
Mat realign_schatten(const LeveledElement& x, int m);
LeveledElement unrealign_schatten(const Mat& R, int n, int m);
// U* R U with U|j l> = |l j>; maps an (n*m)-indexed matrix to (m*n)-indexed.
Mat flip_conjugate(const Mat& R, int n, int m);
Mat flip_conjugate(const LeveledElement& x, int m);

}  // namespace matord
