#include "matord/structures.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace matord {

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::Min: return "min";
    case Kind::Max: return "max";
    case Kind::Schatten: return "schatten";
    case Kind::MatrixSystem: return "matsys";
  }
  return "unknown";
}

Kind parse_kind(const std::string& name) {
  if (name == "min" || name == "MIN") return Kind::Min;
  if (name == "max" || name == "MAX") return Kind::Max;
  if (name == "schatten" || name == "SCHATTEN") return Kind::Schatten;
  if (name == "matsys" || name == "matrix_system" || name == "MATRIX_SYSTEM")
    return Kind::MatrixSystem;
  throw Error(ErrorCode::MalformedInput, "unknown kind '" + name + "'");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NonMember: return "non-member";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "unknown";
}

MatricialStructure::MatricialStructure(BaseSpace base, Kind kind, OptimizerConfig config,
                                       double scale)
    : base_(std::move(base)), kind_(kind), config_(config), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw Error(ErrorCode::MalformedInput, "norm scale must be positive");
  if ((kind == Kind::Schatten || kind == Kind::MatrixSystem) && !base_.is_schatten())
    throw Error(ErrorCode::KindMismatch,
                std::string(kind_name(kind)) + " needs a Schatten base, got " + model_name(base_.model));
  if (kind == Kind::MatrixSystem && !std::isinf(base_.p))
    throw Error(ErrorCode::InvalidP, "matsys needs a Schatten base with p = inf");
  if (config_.restarts < 1 || config_.iterations < 1)
    throw Error(ErrorCode::MalformedInput, "optimizer restarts and iterations must be >= 1");
}

MatricialStructure MatricialStructure::with_config(OptimizerConfig config) const {
  return MatricialStructure(base_, kind_, config, scale_);
}

MatricialStructure MatricialStructure::scaled(double factor) const {
  return MatricialStructure(base_, kind_, config_, scale_ * factor);
}

namespace detail {

PsdCheck check_psd(const Mat& M, double tol) {
  PsdCheck out;
  double mx = max_abs_entry(M);
  if (max_abs_entry(M - M.adjoint()) > std::max(tol, kHermiticityTol) * std::max(mx, 1e-300) &&
      mx > 0.0) {
    out.hermitian = false;
    out.psd = false;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(M));
  const RVec& w = es.eigenvalues();
  out.min_eig = w.size() ? w(0) : 0.0;
  out.vector = w.size() ? Vec(es.eigenvectors().col(0)) : Vec();
  out.psd = out.min_eig >= -tol * std::max(w.cwiseAbs().sum(), 1e-300);
  if (mx == 0.0) out.psd = true;
  return out;
}

void require_kind(const MatricialStructure& S, std::initializer_list<Kind> kinds, const char* op) {
  for (Kind k : kinds)
    if (S.kind() == k) return;
  throw Error(ErrorCode::KindMismatch,
              std::string(op) + " does not apply to kind " + kind_name(S.kind()));
}

void require_element(const MatricialStructure& S, const LeveledElement& x) {
  if (x.base_dim() != S.base().dim)
    throw Error(ErrorCode::BaseSpaceMismatch, "element base_dim does not match the structure");
  if (!x.is_finite()) throw Error(ErrorCode::NonFinite, "element has non-finite entries");
}

void top_singular(const Mat& M, double& sigma, Vec& left, Vec& right) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  sigma = svd.singularValues()(0);
  left = svd.matrixU().col(0);
  right = svd.matrixV().col(0);
}

Mat functional_slice(const LeveledElement& x, const Vec& f) {
  Mat M = Mat::Zero(x.level(), x.level());
  for (int k = 0; k < x.base_dim(); ++k)
    if (f(k) != cplx(0.0, 0.0)) M += f(k) * x.coord(k);
  return M;
}

}  // namespace detail

NormBracket level_norm(const MatricialStructure& S, const LeveledElement& x) {
  NormBracket b;
  switch (S.kind()) {
    case Kind::Min: b = min_level_norm(S, x); break;
    case Kind::Max: b = max_level_norm(S, x); break;
    case Kind::Schatten:
    case Kind::MatrixSystem: b = schatten_level_norm(S, x); break;
  }
  return b;
}

NormEvaluator norm_evaluator(const MatricialStructure& S) {
  return [S](const LeveledElement& x) { return level_norm(S, x); };
}

ConeVerdict cone_member(const MatricialStructure& S, const LeveledElement& x, double tol) {
  switch (S.kind()) {
    case Kind::Min: return min_cone_member(S, x, tol);
    case Kind::Max: return max_cone_member(S, x, tol);
    case Kind::Schatten:
    case Kind::MatrixSystem: return schatten_cone_member(S, x, tol);
  }
  return {};
}

double map_evaluation_min_eig(const LeveledElement& x, const std::vector<Mat>& images) {
  if (static_cast<int>(images.size()) != x.base_dim())
    throw Error(ErrorCode::DimensionMismatch, "map needs one image per base coordinate");
  const int r = static_cast<int>(images[0].rows());
  Mat M = Mat::Zero(x.level() * r, x.level() * r);
  for (int k = 0; k < x.base_dim(); ++k) M += kron(x.coord(k), images[k]);
  return min_eigenvalue(hermitian_part(M));
}

LeveledElement random_element(const BaseSpace& X, int n, Rng& rng) {
  std::vector<Mat> c(X.dim);
  for (auto& m : c) m = random_complex(rng, n, n);
  return LeveledElement(std::move(c));
}

LeveledElement random_hermitian_element(const BaseSpace& X, int n, Rng& rng) {
  return hermitian_part(X, random_element(X, n, rng));
}

static LeveledElement psd_pattern_over_generators(const BaseSpace& X, int n, Rng& rng) {
  LeveledElement x(n, X.dim);
  for (const Vec& g : X.cone_generators) {
    double u = uniform01(rng);
    if (u < 0.2) continue;
    int rank = 1 + static_cast<int>(uniform01(rng) * n) % n;
    x += elementary(random_psd(rng, n, rank), g);
  }
  return x;
}

static Mat separable_realigned(int n, int m, Rng& rng, int terms) {
  Mat R = Mat::Zero(n * m, n * m);
  for (int t = 0; t < terms; ++t) R += kron(random_psd(rng, n, 1), random_psd(rng, m, 1));
  return R;
}

LeveledElement random_cone_element(const MatricialStructure& S, int n, Rng& rng) {
  const BaseSpace& X = S.base();
  if (!X.is_schatten()) return psd_pattern_over_generators(X, n, rng);
  const int m = X.m;
  const int N = n * m;
  int rank = 1 + static_cast<int>(uniform01(rng) * N) % N;
  switch (S.kind()) {
    case Kind::Schatten:
    case Kind::MatrixSystem:
      return unrealign(X, random_psd(rng, N, rank), n);
    case Kind::Max:
      return unrealign(X, separable_realigned(n, m, rng, 1 + rank % 4), n);
    case Kind::Min: {
      double u = uniform01(rng);
      Mat R = random_psd(rng, N, rank);
      if (u < 0.4) R = partial_transpose_second(R, n, m);
      if (u > 0.8) R = separable_realigned(n, m, rng, 2);
      return unrealign(X, R, n);
    }
  }
  return LeveledElement(n, X.dim);
}

LeveledElement identity_pattern(int m) {
  LeveledElement x(m, m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x.coord(i * m + j)(i, j) = 1.0;
  return x;
}

LeveledElement diagonal_pattern(int m) {
  LeveledElement x(m, m * m);
  for (int i = 0; i < m; ++i) x.coord(i * m + i)(i, i) = 1.0;
  return x;
}

LeveledElement flip_element(int m) {
  LeveledElement x(m, m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x.coord(j * m + i)(i, j) = 1.0;
  return x;
}

}  // namespace matord
