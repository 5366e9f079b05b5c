#include "matord/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace matord {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BaseSpaceMismatch: return "BaseSpaceMismatch";
    case ErrorCode::WrongBaseModel: return "WrongBaseModel";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NoWitnessFound: return "NoWitnessFound";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::MatrixFamilyNotFound: return "MatrixFamilyNotFound";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Error";
}

LeveledElement::LeveledElement(int level, int base_dim) : n_(level), d_(base_dim) {
  if (level < 1 || base_dim < 1)
    throw Error(ErrorCode::DimensionMismatch, "level and base_dim must be >= 1");
  coords_.assign(d_, Mat::Zero(n_, n_));
}

LeveledElement::LeveledElement(std::vector<Mat> coordinates) : coords_(std::move(coordinates)) {
  if (coords_.empty()) throw Error(ErrorCode::DimensionMismatch, "no coordinates");
  d_ = static_cast<int>(coords_.size());
  n_ = static_cast<int>(coords_[0].rows());
  for (const auto& c : coords_)
    if (c.rows() != n_ || c.cols() != n_ || n_ < 1)
      throw Error(ErrorCode::DimensionMismatch, "coordinate matrices must be n x n");
}

Vec LeveledElement::entry(int i, int j) const {
  Vec v(d_);
  for (int k = 0; k < d_; ++k) v(k) = coords_[k](i, j);
  return v;
}

void LeveledElement::set_entry(int i, int j, const Vec& v) {
  if (v.size() != d_) throw Error(ErrorCode::DimensionMismatch, "entry length != base_dim");
  for (int k = 0; k < d_; ++k) coords_[k](i, j) = v(k);
}

bool LeveledElement::is_finite() const {
  for (const auto& c : coords_)
    if (!c.allFinite()) return false;
  return true;
}

double LeveledElement::max_abs() const {
  double m = 0.0;
  for (const auto& c : coords_) m = std::max(m, max_abs_entry(c));
  return m;
}

static void check_same_shape(const LeveledElement& a, const LeveledElement& b) {
  if (a.level() != b.level() || a.base_dim() != b.base_dim())
    throw Error(ErrorCode::DimensionMismatch, "elements differ in level or base_dim");
}

LeveledElement& LeveledElement::operator+=(const LeveledElement& o) {
  check_same_shape(*this, o);
  for (int k = 0; k < d_; ++k) coords_[k] += o.coords_[k];
  return *this;
}

LeveledElement& LeveledElement::operator-=(const LeveledElement& o) {
  check_same_shape(*this, o);
  for (int k = 0; k < d_; ++k) coords_[k] -= o.coords_[k];
  return *this;
}

LeveledElement& LeveledElement::operator*=(cplx s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

LeveledElement operator+(LeveledElement a, const LeveledElement& b) { return a += b; }
LeveledElement operator-(LeveledElement a, const LeveledElement& b) { return a -= b; }
LeveledElement operator*(cplx s, LeveledElement a) { return a *= s; }
LeveledElement operator*(double s, LeveledElement a) { return a *= cplx(s, 0.0); }

LeveledElement elementary(const Mat& a, const Vec& v) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "a must be square");
  std::vector<Mat> c(v.size());
  for (int k = 0; k < v.size(); ++k) c[k] = a * v(k);
  return LeveledElement(std::move(c));
}

double max_abs_entry(const Mat& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

bool is_hermitian_matrix(const Mat& M, double rel_tol) {
  if (M.rows() != M.cols()) return false;
  return max_abs_entry(M - M.adjoint()) <= rel_tol * max_abs_entry(M);
}

HermitianSpectrum hermitian_eigen(const Mat& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix not square");
  if (!M.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  if (!is_hermitian_matrix(M)) throw Error(ErrorCode::NonHermitian, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(M));
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const Mat& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix not square");
  if (!M.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  if (!is_hermitian_matrix(M)) throw Error(ErrorCode::NonHermitian, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(M), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Mat& M, double tol) { return min_eigenvalue(M) >= -tol; }

bool is_psd_relative(const Mat& M, double rel_tol) {
  auto spec = hermitian_eigen(M);
  double trace_norm = spec.values.cwiseAbs().sum();
  return spec.values(0) >= -rel_tol * trace_norm;
}

Mat hermitian_part(const Mat& M) { return 0.5 * (M + M.adjoint()); }

static Mat spectral_apply(const Mat& H, double (*f)(double)) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(H));
  RVec w = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat psd_sqrt(const Mat& M) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(M));
  const RVec& w = es.eigenvalues();
  if (w.size() > 0 && w(0) < kSqrtClamp * std::max(1.0, w.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::NonHermitian, "psd_sqrt of a matrix with a negative eigenvalue");
  RVec s = w.unaryExpr([](double t) { return std::sqrt(std::max(t, 0.0)); });
  return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat psd_inverse_sqrt(const Mat& M, double floor) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(M));
  RVec s = es.eigenvalues().unaryExpr([floor](double t) { return 1.0 / std::sqrt(std::max(t, floor)); });
  return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat hermitian_abs(const Mat& H) {
  return spectral_apply(H, [](double t) { return std::abs(t); });
}

Mat abs_left(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVec s = RVec::Zero(A.rows());
  s.head(svd.singularValues().size()) = svd.singularValues();
  return svd.matrixU() * s.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

Mat abs_right(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVec s = RVec::Zero(A.cols());
  s.head(svd.singularValues().size()) = svd.singularValues();
  return svd.matrixV() * s.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
}

Mat polar_unitary(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

RVec singular_values(const Mat& M) {
  if (!M.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  if (M.size() == 0) return RVec();
  return Eigen::JacobiSVD<Mat>(M).singularValues();
}

double lp_norm(const RVec& v, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "p must be >= 1");
  if (v.size() == 0) return 0.0;
  RVec a = v.cwiseAbs();
  double mx = a.maxCoeff();
  if (std::isinf(p) || mx == 0.0) return mx;
  if (p == 1.0) return a.sum();
  if (p == 2.0) return a.norm();
  // scaled to avoid overflow
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::pow(a(i) / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

double schatten_norm(const Mat& M, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "p must be >= 1");
  return lp_norm(singular_values(M), p);
}

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "p must be >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

RVec holder_weights(const RVec& s, double p) {
  RVec w = RVec::Zero(s.size());
  double nrm = lp_norm(s, p);
  if (nrm == 0.0) {
    if (s.size() > 0) w(0) = 1.0;
    return w;
  }
  if (std::isinf(p)) {
    int k = 0;
    s.cwiseAbs().maxCoeff(&k);
    w(k) = 1.0;
  } else if (p == 1.0) {
    for (int i = 0; i < s.size(); ++i) w(i) = std::abs(s(i)) > 0 ? 1.0 : 0.0;
  } else {
    for (int i = 0; i < s.size(); ++i) w(i) = std::pow(std::abs(s(i)) / nrm, p - 1.0);
  }
  return w;
}

Mat schatten_norming(const Mat& G, double r) {
  double rp = conjugate_exponent(r);
  Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVec s = svd.singularValues();
  RVec w = holder_weights(s, rp);
  // X = V diag(w) U*
  const Mat& U = svd.matrixU();
  const Mat& V = svd.matrixV();
  Mat X = Mat::Zero(G.cols(), G.rows());
  for (int i = 0; i < s.size(); ++i) X += w(i) * V.col(i) * U.col(i).adjoint();
  return X;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Mat partial_trace_second(const Mat& Y, int n, int m) {
  if (Y.rows() != n * m || Y.cols() != n * m)
    throw Error(ErrorCode::DimensionMismatch, "partial trace dimensions");
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) out(i, j) += Y(i * m + k, j * m + k);
  return out;
}

Mat partial_transpose_second(const Mat& R, int n, int m) {
  if (R.rows() != n * m || R.cols() != n * m)
    throw Error(ErrorCode::DimensionMismatch, "partial transpose dimensions");
  Mat out(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.block(i * m, j * m, m, m) = R.block(i * m, j * m, m, m).transpose();
  return out;
}

LeveledElement adjoint(const LeveledElement& x, Involution inv, int m) {
  const int d = x.base_dim();
  std::vector<Mat> c(d);
  if (inv == Involution::CoordinateConjugation) {
    for (int k = 0; k < d; ++k) c[k] = x.coord(k).adjoint();
  } else {
    if (m * m != d) throw Error(ErrorCode::DimensionMismatch, "matrix involution needs d = m^2");
    // [x*_ij]_kl = conj([x_ji]_lk)
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) c[k * m + l] = x.coord(l * m + k).adjoint();
  }
  return LeveledElement(std::move(c));
}

LeveledElement compress(const Mat& a, const LeveledElement& x, const Mat& b) {
  if (a.cols() != x.level() || b.cols() != x.level() || a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "compress: a, b must be m x n with n = level");
  std::vector<Mat> c(x.base_dim());
  for (int k = 0; k < x.base_dim(); ++k) c[k] = a * x.coord(k) * b.adjoint();
  return LeveledElement(std::move(c));
}

LeveledElement direct_sum(const LeveledElement& x, const LeveledElement& y) {
  if (x.base_dim() != y.base_dim())
    throw Error(ErrorCode::BaseSpaceMismatch, "direct_sum of elements over different bases");
  std::vector<Mat> c(x.base_dim());
  for (int k = 0; k < x.base_dim(); ++k) c[k] = block_diag(x.coord(k), y.coord(k));
  return LeveledElement(std::move(c));
}

LeveledElement block2(const LeveledElement& x11, const LeveledElement& x12,
                      const LeveledElement& x21, const LeveledElement& x22) {
  check_same_shape(x11, x12);
  check_same_shape(x11, x21);
  check_same_shape(x11, x22);
  const int n = x11.level();
  std::vector<Mat> c(x11.base_dim());
  for (int k = 0; k < x11.base_dim(); ++k) {
    c[k].resize(2 * n, 2 * n);
    c[k] << x11.coord(k), x12.coord(k), x21.coord(k), x22.coord(k);
  }
  return LeveledElement(std::move(c));
}

LeveledElement sub_block(const LeveledElement& x, int row0, int col0, int size) {
  std::vector<Mat> c(x.base_dim());
  for (int k = 0; k < x.base_dim(); ++k) c[k] = x.coord(k).block(row0, col0, size, size);
  return LeveledElement(std::move(c));
}

Mat realign_schatten(const LeveledElement& x, int m) {
  const int n = x.level();
  if (m * m != x.base_dim()) throw Error(ErrorCode::WrongBaseModel, "realign needs d = m^2");
  Mat R(n * m, n * m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      const Mat& X = x.coord(k * m + l);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R(i * m + k, j * m + l) = X(i, j);
    }
  return R;
}

LeveledElement unrealign_schatten(const Mat& R, int n, int m) {
  if (R.rows() != n * m || R.cols() != n * m)
    throw Error(ErrorCode::DimensionMismatch, "unrealign dimensions");
  std::vector<Mat> c(m * m, Mat(n, n));
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[k * m + l](i, j) = R(i * m + k, j * m + l);
  return LeveledElement(std::move(c));
}

Mat flip_conjugate(const Mat& R, int n, int m) {
  if (R.rows() != n * m || R.cols() != n * m)
    throw Error(ErrorCode::DimensionMismatch, "flip dimensions");
  Mat out(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < m; ++l) out(k * n + i, l * n + j) = R(i * m + k, j * m + l);
  return out;
}

Mat flip_conjugate(const LeveledElement& x, int m) {
  return flip_conjugate(realign_schatten(x, m), x.level(), m);
}

}  // namespace matord
