#include "matord/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "optimize.hpp"

namespace matord {

LeveledElement witness_block(const BaseSpace& X, const BlockWitness& w, const LeveledElement& x) {
  return block2(w.x1, x, adjoint(X, x), w.x2);
}

LeveledElement symmetric_witness(const BlockWitness& w) { return 0.5 * (w.x1 + w.x2); }

bool WitnessCheck::ok() const {
  return block != Verdict::NonMember && first != Verdict::NonMember &&
         second != Verdict::NonMember && value_consistent;
}

WitnessCheck verify_witness(const MatricialStructure& S, const LeveledElement& x,
                            const BlockWitness& w, double tol) {
  WitnessCheck c;
  c.block = cone_member(S, witness_block(S.base(), w, x), tol).verdict;
  c.first = cone_member(S, w.x1, tol).verdict;
  c.second = cone_member(S, w.x2, tol).verdict;
  double v = std::max(w.norm1.upper, w.norm2.upper);
  c.value_consistent = std::abs(v - w.value) <= 1e-12 * std::max(1.0, v);
  return c;
}

namespace {

BlockWitness make_witness(const MatricialStructure& S, LeveledElement x1, LeveledElement x2,
                          const std::string& method) {
  BlockWitness w;
  w.norm1 = level_norm(S, x1);
  w.norm2 = level_norm(S, x2);
  // x1 -> s x1, x2 -> x2 / s keeps the block positive
  if (w.norm1.upper > 0.0 && w.norm2.upper > 0.0) {
    double s = std::sqrt(w.norm2.upper / w.norm1.upper);
    x1 *= cplx(s, 0.0);
    x2 *= cplx(1.0 / s, 0.0);
    w.norm1 = level_norm(S, x1);
    w.norm2 = level_norm(S, x2);
  }
  w.x1 = std::move(x1);
  w.x2 = std::move(x2);
  w.value = std::max(w.norm1.upper, w.norm2.upper);
  w.method = method;
  return w;
}

// x = sum_r C_r (x) g_r  ->  (sum |C_r^*| (x) g_r, sum |C_r| (x) g_r)
std::optional<std::pair<LeveledElement, LeveledElement>> generator_polar(const BaseSpace& X,
                                                                         const LeveledElement& x) {
  const int n = x.level(), d = X.dim;
  const int r = static_cast<int>(X.cone_generators.size());
  if (r == 0) return std::nullopt;
  Mat G(d, r);
  for (int j = 0; j < r; ++j) G.col(j) = X.cone_generators[j];
  Mat Gp = G.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<Mat> C(r, Mat::Zero(n, n));
  for (int j = 0; j < r; ++j)
    for (int l = 0; l < d; ++l)
      if (Gp(j, l) != cplx(0.0, 0.0)) C[j] += Gp(j, l) * x.coord(l);
  LeveledElement rebuilt(n, d), x1(n, d), x2(n, d);
  for (int j = 0; j < r; ++j) {
    rebuilt += elementary(C[j], X.cone_generators[j]);
    x1 += elementary(abs_left(C[j]), X.cone_generators[j]);
    x2 += elementary(abs_right(C[j]), X.cone_generators[j]);
  }
  if ((rebuilt - x).max_abs() > 1e-10 * std::max(1.0, x.max_abs())) return std::nullopt;
  return std::make_pair(x1, x2);
}

std::pair<LeveledElement, LeveledElement> factorization_witness(const BaseSpace& X,
                                                                const LeveledElement& x,
                                                                int iterations) {
  auto f = detail::best_factorization(X, x, iterations);
  const int n = x.level();
  LeveledElement x1(n, X.dim), x2(n, X.dim);
  for (size_t r = 0; r < f.a.size(); ++r) {
    Vec mod = f.z[r].cwiseAbs().cast<cplx>();
    x1 += elementary(f.a[r] * f.a[r].adjoint(), mod);
    x2 += elementary(f.b[r].adjoint() * f.b[r], mod);
  }
  return {x1, x2};
}

std::pair<LeveledElement, LeveledElement> natural_witness(const BaseSpace& X,
                                                          const LeveledElement& x) {
  Mat R = realign(X, x);
  return {unrealign(X, abs_left(R), x.level()), unrealign(X, abs_right(R), x.level())};
}

// (c (x) I) |Z^*| (c (x) I), (d (x) I) |Z| (d (x) I) with Z = (c^-1 (x) I) R (d^-1 (x) I)
std::pair<LeveledElement, LeveledElement> twisted_witness(const BaseSpace& X, const Mat& R, int n,
                                                          const Mat& c, const Mat& d) {
  const int m = X.m;
  const Mat Im = Mat::Identity(m, m);
  Mat ci = kron(c.inverse(), Im), di = kron(d.inverse(), Im);
  Mat Z = ci * R * di;
  Mat C = kron(c, Im), D = kron(d, Im);
  Mat X1 = C * abs_left(Z) * C, X2 = D * abs_right(Z) * D;
  return {unrealign(X, hermitian_part(X1), n), unrealign(X, hermitian_part(X2), n)};
}

Mat exp_hermitian(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(H));
  RVec e = es.eigenvalues().array().exp();
  return es.eigenvectors() * e.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat log_psd(const Mat& P) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(P));
  RVec l = es.eigenvalues().cwiseMax(1e-300).array().log();
  return es.eigenvectors() * l.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> herm_params(const Mat& H) {
  const int n = static_cast<int>(H.rows());
  std::vector<double> p;
  for (int i = 0; i < n; ++i) p.push_back(H(i, i).real());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p.push_back(H(i, j).real());
      p.push_back(H(i, j).imag());
    }
  return p;
}

Mat herm_from(const double* p, int n) {
  Mat H(n, n);
  int t = 0;
  for (int i = 0; i < n; ++i) H(i, i) = p[t++];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      H(i, j) = cplx(p[t], p[t + 1]);
      H(j, i) = std::conj(H(i, j));
      t += 2;
    }
  return H;
}

std::vector<BlockWitness> schatten_candidates(const MatricialStructure& S, const LeveledElement& x) {
  const BaseSpace& X = S.base();
  const int n = x.level(), m = X.m;
  std::vector<BlockWitness> out;
  auto nat = natural_witness(X, x);
  out.push_back(make_witness(S, nat.first, nat.second, "closed-form |R^*|, |R|"));
  if (std::isinf(X.p) || n == 1) return out;

  Mat R = realign(X, x);
  SchattenOptimum opt = schatten_norm_ascent(R, n, m, X.p, S.config());
  // additive regularisation keeps c, d well conditioned when the optimum is rank deficient
  const Mat In = Mat::Identity(n, n);
  const double sa = schatten_norm(opt.a, kInf), sb = schatten_norm(opt.b, kInf);
  Mat c, d;
  for (double delta : {1e-4, 1e-6}) {
    Mat cc = psd_inverse_sqrt(opt.a.adjoint() * opt.a + delta * sa * sa * In, 0.0);
    Mat dd = psd_inverse_sqrt(opt.b * opt.b.adjoint() + delta * sb * sb * In, 0.0);
    auto tw = twisted_witness(X, R, n, cc, dd);
    out.push_back(make_witness(S, tw.first, tw.second, "twisted by the norming pair"));
    if (c.size() == 0 || out.back().value < out[out.size() - 2].value) {
      c = cc;
      d = dd;
    }
  }

  // local refinement of the twist over log c, log d
  const int per = n * n;
  std::vector<double> x0 = herm_params(log_psd(c));
  std::vector<double> xd = herm_params(log_psd(d));
  x0.insert(x0.end(), xd.begin(), xd.end());
  const bool cheap = X.p == 1.0 || X.p == 2.0;
  OptimizerConfig light = S.config();
  light.restarts = 2;
  light.iterations = 100;
  const MatricialStructure Sl = cheap ? S : S.with_config(light);
  auto value = [&](const std::vector<double>& p) {
    Mat cc = exp_hermitian(herm_from(p.data(), n));
    Mat dd = exp_hermitian(herm_from(p.data() + per, n));
    auto w = twisted_witness(X, R, n, cc, dd);
    double u1 = level_norm(Sl, w.first).upper, u2 = level_norm(Sl, w.second).upper;
    return std::sqrt(u1 * u2);
  };
  auto res = detail::nelder_mead(value, x0, 0.05, cheap ? 2000 : 60, 1e-12);
  Mat cc = exp_hermitian(herm_from(res.x.data(), n));
  Mat dd = exp_hermitian(herm_from(res.x.data() + per, n));
  auto rw = twisted_witness(X, R, n, cc, dd);
  out.push_back(make_witness(S, rw.first, rw.second, "twisted, refined"));
  return out;
}

}  // namespace

BlockWitness generation_witness(const MatricialStructure& S, const LeveledElement& x, double eps) {
  detail::require_element(S, x);
  const BaseSpace& X = S.base();
  const int n = x.level();
  const double tol = 1e-8;
  (void)eps;
  if (x.max_abs() == 0.0) {
    BlockWitness w;
    w.x1 = w.x2 = LeveledElement(n, X.dim);
    w.method = "zero";
    return w;
  }
  if (is_hermitian_element(X, x, 1e-12)) {
    ConeVerdict v = cone_member(S, x, 1e-12);
    if (v.member()) {
      BlockWitness w;
      w.x1 = w.x2 = x;
      w.norm1 = w.norm2 = level_norm(S, x);
      w.value = w.norm1.upper;
      w.method = "member";
      return w;
    }
  }

  std::vector<BlockWitness> cands;
  const int iters = S.config().iterations * 4;
  switch (S.kind()) {
    case Kind::MatrixSystem:
    case Kind::Schatten:
      cands = schatten_candidates(S, x);
      break;
    case Kind::Min:
    case Kind::Max:
      if (X.is_lattice()) {
        auto f = factorization_witness(X, x, iters);
        cands.push_back(make_witness(S, f.first, f.second, "factorization"));
      }
      if (S.kind() == Kind::Min && X.is_schatten()) {
        auto nat = natural_witness(X, x);
        cands.push_back(make_witness(S, nat.first, nat.second, "natural-cone |R^*|, |R|"));
      }
      if (auto g = generator_polar(X, x))
        cands.push_back(make_witness(S, g->first, g->second, "generator-polar"));
      break;
  }
  std::sort(cands.begin(), cands.end(),
            [](const BlockWitness& a, const BlockWitness& b) { return a.value < b.value; });
  for (const BlockWitness& w : cands) {
    auto vc = verify_witness(S, x, w, tol);
    if (vc.ok()) return w;
  }
  throw Error(ErrorCode::NoWitnessFound, "no verified generation witness");
}

NormalityProbe normality_probe(const MatricialStructure& S, int n, int budget, std::uint64_t seed) {
  Rng rng(seed);
  OptimizerConfig light = S.config();
  light.restarts = std::min(light.restarts, 8);
  MatricialStructure Sl = S.with_config(light);
  NormalityProbe out;
  for (int t = 0; out.samples < budget && t < 4 * budget; ++t) {
    LeveledElement u1, u, u2;
    bool pair = false;
    switch (t % 4) {
      case 0: {
        LeveledElement a = random_cone_element(S, n, rng), b = random_cone_element(S, n, rng);
        u1 = u2 = a + b;
        u = a - b;
        pair = true;
        break;
      }
      case 1: {
        u1 = u2 = u = random_cone_element(S, n, rng);
        break;
      }
      default: {
        LeveledElement big = random_cone_element(S, 2 * n, rng);
        u1 = sub_block(big, 0, 0, n);
        u = sub_block(big, 0, n, n);
        u2 = sub_block(big, n, n, n);
      }
    }
    double den = std::max(level_norm(S, u1).upper, level_norm(S, u2).upper);
    if (den <= 0.0) continue;
    double ratio = level_norm(Sl, u).lower / den;
    ++out.samples;
    if (pair) out.pair_bound = std::max(out.pair_bound, ratio);
    if (ratio > out.bound) {
      out.bound = ratio;
      out.u1 = u1;
      out.u = u;
      out.u2 = u2;
    }
  }
  return out;
}

RegularityReport regularity_report(const MatricialStructure& S, int n, int budget,
                                   std::uint64_t seed) {
  RegularityReport rep;
  rep.level = n;
  rep.budget = budget;
  rep.seed = seed;
  rep.normality = normality_probe(S, n, budget, seed);
  Rng rng(seed ^ 0xa0761d6478bd642fULL);
  const int gen_samples = std::max(1, budget / 10);
  for (int t = 0; t < gen_samples; ++t) {
    LeveledElement x = random_hermitian_element(S.base(), n, rng);
    BlockWitness w = generation_witness(S, x);
    double ratio = w.value / std::max(level_norm(S, x).lower, 1e-300);
    if (ratio > rep.generation_upper_bound) {
      rep.generation_upper_bound = ratio;
      rep.worst_x = x;
      rep.worst_witness = w;
    }
  }
  return rep;
}

MaxNiceDecomposition max_nice_decompose(const BaseSpace& X, const Vec& v, double eps) {
  if (!X.is_lattice()) throw Error(ErrorCode::ModelMismatch, "max_nice_decompose needs a lattice");
  if (v.size() != X.dim) throw Error(ErrorCode::DimensionMismatch, "vector length != dim");
  (void)eps;
  MaxNiceDecomposition out;
  const int d = X.dim;
  out.xi = Vec::Ones(d);
  out.eta = Vec::Ones(d);
  Vec rebuilt = Vec::Zero(d), xi_sum = Vec::Zero(d), eta_sum = Vec::Zero(d);
  for (int k = 0; k < d; ++k) {
    double r = std::abs(v(k));
    Vec e = Vec::Zero(d);
    e(k) = r;
    out.x.push_back(e);
    if (r > 0.0) out.xi(k) = v(k) / r;
    rebuilt += out.xi(k) * std::conj(out.eta(k)) * e;
    xi_sum += std::norm(out.xi(k)) * e;
    eta_sum += std::norm(out.eta(k)) * e;
  }
  out.residual = base_norm(X, v - rebuilt);
  out.xi_sum_norm = base_norm(X, xi_sum);
  out.eta_sum_norm = base_norm(X, eta_sum);
  return out;
}

bool min_nice_grid_holds(const Vec& x, const Vec& x1, const Vec& x2) {
  const int d = static_cast<int>(x.size());
  for (int k = 0; k < d; ++k) {
    double a = x1(k).real(), b = x2(k).real();
    if (a < 0.0 || b < 0.0) return false;
    std::vector<double> ts;
    for (int g = -40; g <= 40; ++g) ts.push_back(std::pow(10.0, g / 10.0));
    if (a > 0.0 && b > 0.0) ts.push_back(std::sqrt(std::sqrt(b / a)));
    std::vector<cplx> omegas;
    for (int j = 0; j < 32; ++j) omegas.push_back(std::polar(1.0, 2.0 * M_PI * j / 32));
    if (std::abs(x(k)) > 0.0) omegas.push_back(std::conj(x(k)) / std::abs(x(k)));
    double scale = std::max({a, b, std::abs(x(k)), 1e-300});
    for (double t : ts)
      for (cplx w : omegas) {
        double lhs = t * t * a + b / (t * t);
        double rhs = 2.0 * (w * x(k)).real();
        if (lhs < rhs - 1e-12 * scale) return false;
      }
  }
  return true;
}

MinNiceReport min_nice_check(const BaseSpace& X, int budget, std::uint64_t seed) {
  if (!X.is_lattice()) throw Error(ErrorCode::ModelMismatch, "min_nice_check needs a lattice");
  Rng rng(seed);
  MinNiceReport rep;
  const int d = X.dim;
  for (int t = 0; t < budget; ++t) {
    Vec x1 = random_cone_vector(X, rng), x2 = random_cone_vector(X, rng), x(d);
    const bool plant = t % 5 == 4;
    int bad = static_cast<int>(uniform01(rng) * d) % d;
    for (int k = 0; k < d; ++k) {
      double g = std::sqrt(x1(k).real() * x2(k).real());
      double r = t % 7 == 0 ? g : uniform01(rng) * g;
      x(k) = std::polar(r, 2.0 * M_PI * uniform01(rng));
    }
    if (plant) {
      if (x1(bad).real() == 0.0) x1(bad) = 1.0;
      if (x2(bad).real() == 0.0) x2(bad) = 1.0;
      double g = std::sqrt(x1(bad).real() * x2(bad).real());
      x(bad) = std::polar(1.2 * g + 1e-6, 2.0 * M_PI * uniform01(rng));
    }
    ++rep.samples;
    bool holds = min_nice_grid_holds(x, x1, x2);
    if (plant) {
      ++rep.planted_violators;
      if (!holds) ++rep.rejected_violators;
      continue;
    }
    if (!holds) continue;
    ++rep.admissible;
    if (base_norm(X, x) > std::max(base_norm(X, x1), base_norm(X, x2)) * (1.0 + 1e-12) + 1e-15)
      ++rep.norm_violations;
  }
  return rep;
}

LeveledElement apply_map(const Mat& map, const LeveledElement& x) {
  if (map.cols() != x.base_dim()) throw Error(ErrorCode::DimensionMismatch, "map columns != base_dim");
  std::vector<Mat> c(map.rows(), Mat::Zero(x.level(), x.level()));
  for (int l = 0; l < map.rows(); ++l)
    for (int k = 0; k < x.base_dim(); ++k)
      if (map(l, k) != cplx(0.0, 0.0)) c[l] += map(l, k) * x.coord(k);
  return LeveledElement(std::move(c));
}

CbcCbReport cbc_cb_compare(const MatricialStructure& from, const MatricialStructure& to,
                           const Mat& map, int n_max, int budget, std::uint64_t seed, double c1,
                           double c2, double tol) {
  if (map.rows() != to.base().dim || map.cols() != from.base().dim)
    throw Error(ErrorCode::DimensionMismatch, "map must be dim(to) x dim(from)");
  Rng rng(seed);
  CbcCbReport rep;
  rep.c1 = c1;
  rep.c2 = c2;
  rep.levels = n_max;
  const BaseSpace& X = from.base();
  auto ratio = [&](const LeveledElement& x) {
    double den = level_norm(from, x).upper;
    return den > 0.0 ? level_norm(to, apply_map(map, x)).lower / den : 0.0;
  };
  auto positive_sample = [&](const LeveledElement& x) {
    ConeVerdict v = cone_member(to, apply_map(map, x), 1e-8);
    if (v.non_member())
      throw Error(ErrorCode::NotCompletelyPositive,
                  "a cone member at level " + std::to_string(x.level()) + " maps outside the cone");
    double r = ratio(x);
    rep.cbc_lower = std::max(rep.cbc_lower, r);
    rep.cb_lower = std::max(rep.cb_lower, r);
    ++rep.samples;
  };
  for (int n = 1; n <= n_max; ++n) {
    if (X.is_schatten() && n == X.m) {
      LeveledElement id = identity_pattern(X.m);
      if (cone_member(from, id, 1e-9).member()) positive_sample(id);
    }
    for (int t = 0; t < budget; ++t) positive_sample(random_cone_element(from, n, rng));
  }
  // ball samples, with their generation witnesses as extra positive samples
  bool sandwich = true;
  for (int n = 1; n <= n_max; ++n)
    for (int t = 0; t < std::max(1, budget / 4); ++t) {
      LeveledElement x = random_element(X, n, rng);
      rep.cb_lower = std::max(rep.cb_lower, ratio(x));
      ++rep.samples;
      BlockWitness w = generation_witness(from, x);
      positive_sample(w.x1);
      positive_sample(w.x2);
    }
  sandwich = rep.cbc_lower <= rep.cb_lower * (1.0 + tol) + tol &&
             rep.cb_lower <= c1 * c2 * rep.cbc_lower * (1.0 + tol) + tol;
  rep.sandwich_holds = sandwich;
  return rep;
}

}  // namespace matord
