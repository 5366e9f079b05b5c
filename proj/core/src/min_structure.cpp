#include <algorithm>
#include <cmath>

#include "internal.hpp"

namespace matord {

namespace {

bool is_lp_model(const BaseSpace& X) { return !X.is_schatten(); }

Vec random_dual_unit(const BaseSpace& X, Rng& rng) {
  Vec f = random_complex(rng, X.dim, 1).col(0);
  return f / dual_norm(X, f);
}

// Alternating ascent over (f, xi, eta) for sup Re <f, <xi|x|eta>>.
double min_norm_ascent(const BaseSpace& X, const LeveledElement& x, const OptimizerConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Vec> starts;
  for (const Vec& g : X.dual_generators) {
    double nrm = dual_norm(X, g);
    if (nrm > 0) starts.push_back(g / nrm);
  }
  while (static_cast<int>(starts.size()) < cfg.restarts) starts.push_back(random_dual_unit(X, rng));
  double best = 0.0;
  for (Vec f : starts) {
    double prev = -1.0;
    for (int it = 0; it < cfg.iterations; ++it) {
      Mat M = detail::functional_slice(x, f);
      double sigma;
      Vec xi, eta;
      detail::top_singular(M, sigma, xi, eta);
      Vec v(X.dim);
      for (int k = 0; k < X.dim; ++k) v(k) = xi.dot(x.coord(k) * eta);
      double val = base_norm(X, v);
      best = std::max(best, val);
      if (val <= prev + 1e-15 * std::max(1.0, val)) break;
      prev = val;
      f = norming_functional(X, v);
    }
  }
  return best;
}

bool all_coordinates_psd(const LeveledElement& x) {
  for (const Mat& c : x.coords()) {
    auto chk = detail::check_psd(c, 1e-12);
    if (!chk.psd) return false;
  }
  return true;
}

}  // namespace

double min_l1_grid_upper(const MatricialStructure& S, const LeveledElement& x, int grid) {
  const BaseSpace& X = S.base();
  if (!is_lp_model(X) || X.p != 1.0)
    throw Error(ErrorCode::ModelMismatch, "grid bound needs an l_1 norm");
  detail::require_element(S, x);
  const int d = X.dim;
  if (d - 1 > 4) throw Error(ErrorCode::MalformedInput, "grid bound limited to dim <= 5");
  if (grid < 1) throw Error(ErrorCode::MalformedInput, "grid must be >= 1");
  // f_k = w_k e^{i theta_k}, theta_0 = 0; nearest grid point within pi/grid per angle
  double margin = 0.0;
  for (int k = 1; k < d; ++k) margin += X.weights(k) * schatten_norm(x.coord(k), kInf);
  margin *= M_PI / grid;
  long total = 1;
  for (int k = 1; k < d; ++k) total *= grid;
  double best = 0.0;
  std::vector<int> idx(d, 0);
  for (long t = 0; t < total; ++t) {
    long rem = t;
    Mat M = X.weights(0) * x.coord(0);
    for (int k = 1; k < d; ++k) {
      int g = static_cast<int>(rem % grid);
      rem /= grid;
      double th = 2.0 * M_PI * g / grid;
      M += X.weights(k) * std::polar(1.0, th) * x.coord(k);
    }
    best = std::max(best, schatten_norm(M, kInf));
  }
  return S.scale() * (best + margin);
}

NormBracket min_level_norm(const MatricialStructure& S, const LeveledElement& x) {
  detail::require_kind(S, {Kind::Min}, "min_level_norm");
  detail::require_element(S, x);
  const BaseSpace& X = S.base();
  const double sc = S.scale();
  NormBracket b;
  if (x.level() == 1) {
    b.lower = b.upper = sc * base_norm(X, x.entry(0, 0));
    b.method = "level-1";
    return b;
  }
  if (is_lp_model(X)) {
    RVec ops(X.dim);
    for (int k = 0; k < X.dim; ++k) ops(k) = X.weights(k) * schatten_norm(x.coord(k), kInf);
    double up = lp_norm(ops, X.p);
    if (std::isinf(X.p)) {
      b.lower = b.upper = sc * up;
      b.method = "closed-form";
      return b;
    }
    if (X.p == 1.0 && all_coordinates_psd(x)) {
      Mat W = Mat::Zero(x.level(), x.level());
      for (int k = 0; k < X.dim; ++k) W += X.weights(k) * hermitian_part(x.coord(k));
      b.lower = b.upper = sc * std::max(0.0, hermitian_eigen(W).values.maxCoeff());
      b.method = "closed-form (positive)";
      return b;
    }
    b.upper = up;
    b.method = "ascent/coordinate-norms";
  } else {
    Mat R = realign(X, x);
    double p = X.p;
    double up = schatten_norm(R, p);
    if (!std::isinf(p)) up = std::min(up, std::pow(X.m, 1.0 / p) * schatten_norm(R, kInf));
    b.upper = up;
    b.method = "ascent/realigned-norms";
  }
  double lower = min_norm_ascent(X, x, S.config());
  b.lower = sc * std::min(lower, b.upper);
  b.upper *= sc;
  if (is_lp_model(X) && X.p == 1.0 && X.dim <= 3) {
    double g = min_l1_grid_upper(S, x, X.dim == 2 ? 720 : 64);
    if (g < b.upper) {
      b.upper = g;
      b.method = "ascent/phase-grid";
    }
  }
  if (is_lp_model(X) && X.p == 1.0) {
    // MIN <= MAX, and MAX is bounded by any factorization through unit vectors
    std::vector<Mat> C(X.dim);
    for (int k = 0; k < X.dim; ++k) C[k] = X.weights(k) * x.coord(k);
    double f = sc * detail::factorization_upper(C, S.config().iterations * 4);
    if (f < b.upper) {
      b.upper = f;
      b.method = "ascent/factorization";
    }
  }
  b.lower = std::min(b.lower, b.upper);
  return b;
}

ConeVerdict min_cone_member(const MatricialStructure& S, const LeveledElement& x, double tol) {
  detail::require_kind(S, {Kind::Min}, "min_cone_member");
  detail::require_element(S, x);
  const BaseSpace& X = S.base();
  ConeVerdict v;
  v.tol = tol;
  if (!X.is_schatten()) {
    v.method = "dual-generators";
    if (X.is_custom() && !is_hermitian_element(X, x, std::max(tol, kHermiticityTol))) {
      v.verdict = Verdict::NonMember;
      v.certificate.type = "non-hermitian";
      return v;
    }
    for (const Vec& f : X.dual_generators) {
      auto chk = detail::check_psd(detail::functional_slice(x, f), tol);
      if (!chk.psd) {
        v.verdict = Verdict::NonMember;
        v.certificate.type = chk.hermitian ? "functional" : "non-hermitian";
        v.certificate.functional = f;
        v.certificate.vector = chk.vector;
        v.certificate.value = chk.min_eig;
        return v;
      }
    }
    v.verdict = Verdict::Member;
    return v;
  }

  const int n = x.level(), m = X.m;
  Mat R = realign(X, x);
  auto direct = detail::check_psd(R, tol);
  if (!direct.hermitian) {
    v.verdict = Verdict::NonMember;
    v.method = "hermiticity";
    v.certificate.type = "non-hermitian";
    return v;
  }
  if (direct.psd) {
    v.verdict = Verdict::Member;
    v.method = "realigned-psd";
    return v;
  }
  if (detail::check_psd(partial_transpose_second(R, n, m), tol).psd) {
    v.verdict = Verdict::Member;
    v.method = "partial-transpose-psd";
    return v;
  }

  // minimise (xi (x) zeta)^* R (xi (x) zeta) over product vectors
  v.method = "product-vector-falsifier";
  const double scale = std::max(hermitian_eigen(R).values.cwiseAbs().sum(), 1e-300);
  Rng rng(S.config().seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Vec> starts;
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = 1.0;
    starts.push_back(e);
    for (int j = i + 1; j < n; ++j)
      for (cplx ph : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) {
        Vec f = Vec::Zero(n);
        f(i) = 1.0 / std::sqrt(2.0);
        f(j) = ph / std::sqrt(2.0);
        starts.push_back(f);
      }
  }
  for (int r = 0; r < S.config().restarts; ++r) starts.push_back(random_unit_vector(rng, n));
  double best = kInf;
  Vec best_xi, best_zeta;
  for (Vec xi : starts) {
    Vec zeta;
    double prev = kInf;
    for (int it = 0; it < S.config().iterations; ++it) {
      Mat Xi = kron(xi, Mat::Identity(m, m));
      auto sz = hermitian_eigen(hermitian_part(Xi.adjoint() * R * Xi));
      zeta = sz.vectors.col(0);
      Mat Z = kron(Mat::Identity(n, n), zeta);
      auto sx = hermitian_eigen(hermitian_part(Z.adjoint() * R * Z));
      xi = sx.vectors.col(0);
      double val = sx.values(0);
      if (val < best) {
        best = val;
        best_xi = xi;
        best_zeta = zeta;
      }
      if (val >= prev - 1e-15 * scale) break;
      prev = val;
    }
    if (best < -tol * scale) break;
  }
  if (best < -tol * scale) {
    v.verdict = Verdict::NonMember;
    v.certificate.type = "functional";
    // <F, V> = tr(F V^T) = zeta^* V zeta for F = conj(zeta zeta^*)
    v.certificate.functional = from_square(Mat(best_zeta * best_zeta.adjoint()).conjugate());
    v.certificate.vector = best_xi;
    v.certificate.value = best;
    return v;
  }
  v.verdict = Verdict::Undecided;
  v.certificate.value = best;
  v.certificate.note = "no product vector with negative value found";
  return v;
}

}  // namespace matord
