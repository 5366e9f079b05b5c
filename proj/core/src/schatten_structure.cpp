#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace matord {

SchattenOptimum schatten_norm_ascent(const Mat& R, int n, int m, double p,
                                     const OptimizerConfig& cfg) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "p must be >= 1");
  const double q = conjugate_exponent(p);
  const double r = 2.0 * p;
  const Mat Im = Mat::Identity(m, m);
  Rng rng(cfg.seed ^ 0x6a09e667f3bcc909ULL);
  SchattenOptimum best;
  best.a = best.b = Mat::Identity(n, n) / std::pow(n, 1.0 / r);
  auto value = [&](const Mat& a, const Mat& b) {
    return schatten_norm(kron(a, Im) * R * kron(b, Im), p);
  };
  best.value = value(best.a, best.b);
  for (int s = 0; s < cfg.restarts; ++s) {
    Mat a, b;
    if (s == 0) {
      a = b = Mat::Identity(n, n) / std::pow(n, 1.0 / r);
    } else {
      a = random_complex(rng, n, n);
      b = random_complex(rng, n, n);
      a /= schatten_norm(a, r);
      b /= schatten_norm(b, r);
    }
    double prev = -1.0;
    for (int it = 0; it < cfg.iterations; ++it) {
      Mat G = kron(a, Im) * R * kron(b, Im);
      Mat S = schatten_norming(G, q);
      a = schatten_norming(partial_trace_second(R * kron(b, Im) * S, n, m), r);
      b = schatten_norming(partial_trace_second(S * kron(a, Im) * R, n, m), r);
      double val = value(a, b);
      if (val > best.value) {
        best.value = val;
        best.a = a;
        best.b = b;
      }
      if (val <= prev + 1e-15 * std::max(1.0, val)) break;
      prev = val;
    }
  }
  return best;
}

double schatten1_factorization_upper(const Mat& R, int n, int m) {
  // Y[(i,a),(b,j)] = [x_ij]_ab
  Mat Y(n * m, m * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) Y(i * m + a, b * n + j) = R(i * m + a, j * m + b);
  Eigen::JacobiSVD<Mat> svd(Y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat left = Mat::Zero(n, n), right = Mat::Zero(n, n);
  for (int t = 0; t < svd.singularValues().size(); ++t) {
    double s = svd.singularValues()(t);
    if (s <= 0.0) break;
    Mat A(n, m), B(m, n);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m; ++a) A(i, a) = std::sqrt(s) * svd.matrixU()(i * m + a, t);
    for (int b = 0; b < m; ++b)
      for (int j = 0; j < n; ++j) B(b, j) = std::sqrt(s) * std::conj(svd.matrixV()(b * n + j, t));
    left += A * A.adjoint();
    right += B.adjoint() * B;
  }
  return std::sqrt(schatten_norm(left, kInf) * schatten_norm(right, kInf));
}

NormBracket schatten_level_norm(const MatricialStructure& S, const LeveledElement& x) {
  detail::require_kind(S, {Kind::Schatten, Kind::MatrixSystem}, "schatten_level_norm");
  detail::require_element(S, x);
  const BaseSpace& X = S.base();
  const double p = X.p, sc = S.scale();
  const int n = x.level(), m = X.m;
  Mat R = realign(X, x);
  NormBracket b;
  auto exact = [&](double v, const char* method) {
    b.lower = b.upper = sc * v;
    b.method = method;
    return b;
  };
  if (n == 1) return exact(schatten_norm(R, p), "level-1");
  if (std::isinf(p)) return exact(schatten_norm(R, kInf), "realigned-operator-norm");
  if (p == 2.0) {
    Mat T = Mat::Zero(n * n, n * n);
    for (int k = 0; k < X.dim; ++k) T += kron(x.coord(k), x.coord(k).conjugate());
    return exact(std::sqrt(schatten_norm(T, kInf)), "oh-formula");
  }
  if (p == 1.0) {
    auto chk = detail::check_psd(R, 1e-12);
    if (chk.psd) {
      Mat T = partial_trace_second(hermitian_part(R), n, m);
      return exact(std::max(0.0, hermitian_eigen(hermitian_part(T)).values.maxCoeff()),
                   "positive-partial-trace");
    }
  }
  double upper = std::min(schatten_norm(R, p), std::pow(m, 1.0 / p) * schatten_norm(R, kInf));
  if (p == 1.0) upper = std::min(upper, schatten1_factorization_upper(R, n, m));
  double lower = schatten_norm_ascent(R, n, m, p, S.config()).value;
  b.lower = sc * std::min(lower, upper);
  b.upper = sc * upper;
  b.method = "block-ascent/bounds";
  return b;
}

ConeVerdict schatten_cone_member(const MatricialStructure& S, const LeveledElement& x, double tol) {
  detail::require_kind(S, {Kind::Schatten, Kind::MatrixSystem}, "schatten_cone_member");
  detail::require_element(S, x);
  ConeVerdict v;
  v.tol = tol;
  v.method = "realigned-psd";
  auto chk = detail::check_psd(realign(S.base(), x), tol);
  if (!chk.hermitian) {
    v.verdict = Verdict::NonMember;
    v.certificate.type = "non-hermitian";
    return v;
  }
  v.certificate.value = chk.min_eig;
  v.certificate.vector = chk.vector;
  v.certificate.type = "eigenvector";
  v.verdict = chk.psd ? Verdict::Member : Verdict::NonMember;
  return v;
}

}  // namespace matord
