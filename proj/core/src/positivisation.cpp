#include "matord/positivisation.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "matord/duality.hpp"
#include "optimize.hpp"

namespace matord {

namespace {

// each step of a descent under an inner evaluator costs two nested positivisations
constexpr int kInnerDescentIterations = 40;

Mat exp_h(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(H));
  RVec e = es.eigenvalues().array().exp();
  return es.eigenvectors() * e.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat log_h(const Mat& P, double shift) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(P));
  RVec l = (es.eigenvalues().array().max(0.0) + shift).log();
  return es.eigenvectors() * l.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

void push_herm(const Mat& H, std::vector<double>& p) {
  const int n = static_cast<int>(H.rows());
  for (int i = 0; i < n; ++i) p.push_back(H(i, i).real());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p.push_back(H(i, j).real());
      p.push_back(H(i, j).imag());
    }
}

Mat read_herm(const double*& p, int n) {
  Mat H(n, n);
  for (int i = 0; i < n; ++i) H(i, i) = *p++;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      H(i, j) = cplx(p[0], p[1]);
      H(j, i) = std::conj(H(i, j));
      p += 2;
    }
  return H;
}

bool descent_supported(const MatricialStructure& S) {
  if (S.kind() == Kind::Schatten || S.kind() == Kind::MatrixSystem) return true;
  return S.base().is_lattice();
}

// Kinds whose alpha+ equals alpha when the witness attains alpha (1-normal).
bool one_normal(const MatricialStructure& S) {
  if (S.kind() == Kind::Schatten || S.kind() == Kind::MatrixSystem) return true;
  return S.kind() == Kind::Min && S.base().is_lattice();
}

// x2 = exp(H) (per coordinate for lattices, realigned for Schatten kinds) and
// the minimal x1 = x x2^{-1} x^* making the block positive.
struct SchurParam {
  const MatricialStructure& S;
  const LeveledElement& x;
  bool schatten;
  int n, blk;

  SchurParam(const MatricialStructure& s, const LeveledElement& xx)
      : S(s), x(xx), schatten(!s.base().is_lattice()), n(xx.level()),
        blk(schatten ? xx.level() * s.base().m : xx.level()) {}

  std::vector<double> start(const LeveledElement& x2) const {
    std::vector<double> p;
    if (schatten) {
      Mat R2 = realign(S.base(), x2);
      push_herm(log_h(R2, 1e-6 * std::max(schatten_norm(R2, kInf), 1e-300)), p);
    } else {
      for (int k = 0; k < x.base_dim(); ++k) {
        const Mat& X2 = x2.coord(k);
        push_herm(log_h(X2, 1e-6 * std::max(schatten_norm(X2, kInf), 1e-300)), p);
      }
    }
    return p;
  }

  std::pair<LeveledElement, LeveledElement> build(const std::vector<double>& params) const {
    const double* p = params.data();
    if (schatten) {
      Mat H = read_herm(p, blk);
      Mat R = realign(S.base(), x);
      Mat R2 = exp_h(H), R1 = hermitian_part(R * exp_h(-H) * R.adjoint());
      return {unrealign(S.base(), R1, n), unrealign(S.base(), hermitian_part(R2), n)};
    }
    LeveledElement x1(n, x.base_dim()), x2(n, x.base_dim());
    for (int k = 0; k < x.base_dim(); ++k) {
      Mat H = read_herm(p, n);
      x2.coord(k) = exp_h(H);
      x1.coord(k) = hermitian_part(x.coord(k) * exp_h(-H) * x.coord(k).adjoint());
    }
    return {x1, x2};
  }
};

BlockWitness balanced(const NormEvaluator& ev, LeveledElement x1, LeveledElement x2,
                      const std::string& method) {
  BlockWitness w;
  double u1 = ev(x1).upper, u2 = ev(x2).upper;
  if (u1 > 0.0 && u2 > 0.0) {
    double s = std::sqrt(u2 / u1);
    x1 *= cplx(s, 0.0);
    x2 *= cplx(1.0 / s, 0.0);
  }
  w.norm1 = ev(x1);
  w.norm2 = ev(x2);
  w.x1 = std::move(x1);
  w.x2 = std::move(x2);
  w.value = std::max(w.norm1.upper, w.norm2.upper);
  w.method = method;
  return w;
}

// sup ||<<y, x>>|| / alpha_dual(y) over dual cone members y
double dual_lower(const MatricialStructure& S, const LeveledElement& x, int budget, Rng& rng) {
  MatricialStructure D = dual_structure(S);
  const BaseSpace& X = S.base();
  const int n = x.level();
  double best = 0.0;
  auto ratio = [&](const LeveledElement& y) {
    double den = level_norm(D, y).upper;
    return den > 0.0 ? singular_values(pairing(y, x))(0) / den : 0.0;
  };
  // MAX norms are costly, so a MAX dual gets few unstructured samples
  const int samples = D.kind() == Kind::Max ? std::min(budget, 4) : budget;
  for (int t = 0; t < samples; ++t) best = std::max(best, ratio(random_cone_element(D, n, rng)));

  if (S.kind() == Kind::Schatten || S.kind() == Kind::MatrixSystem) {
    // realigned y = w w^* with w = vec(W), W of size m x m; W = I gives <<y, x>> = R
    const int m = X.m;
    auto y_of = [&](const double* p) {
      Vec w(m * m);
      for (int i = 0; i < m * m; ++i) w(i) = cplx(p[2 * i], p[2 * i + 1]);
      return unrealign(D.base(), w * w.adjoint(), m);
    };
    std::vector<double> p0(2 * m * m, 0.0);
    for (int i = 0; i < m; ++i) p0[2 * (i * m + i)] = 1.0;
    best = std::max(best, ratio(y_of(p0.data())));
    const int iters = std::max(50, S.config().iterations / 2);
    for (int r = 0; r < 3; ++r) {
      std::vector<double> s = p0;
      if (r > 0)
        for (double& v : s) v += 0.5 * normal01(rng);
      auto res = detail::nelder_mead([&](const std::vector<double>& p) { return -ratio(y_of(p.data())); },
                                     s, 0.2, iters);
      best = std::max(best, -res.value);
    }
  } else if (X.is_lattice()) {
    // y = e e^* (x) f with f >= 0: ratio ||sum f_k X_k|| / ||f||_dual
    const int d = X.dim;
    auto lat = [&](const std::vector<double>& th) {
      Vec f(d);
      Mat M = Mat::Zero(n, n);
      for (int k = 0; k < d; ++k) {
        f(k) = std::exp(std::max(-50.0, std::min(50.0, th[k])));
        M += f(k) * x.coord(k);
      }
      double den = dual_norm(X, f) / S.scale();
      return den > 0.0 ? singular_values(M)(0) / den : 0.0;
    };
    for (int k = 0; k <= d; ++k) {
      std::vector<double> th(d, k < d ? -12.0 : 0.0);
      if (k < d) th[k] = 0.0;
      best = std::max(best, lat(th));
      auto res = detail::nelder_mead([&](const std::vector<double>& p) { return -lat(p); }, th, 0.5,
                                     std::max(50, S.config().iterations / 2));
      best = std::max(best, -res.value);
    }
  }
  return best;
}

}  // namespace

PositivisationResult alpha_plus(const MatricialStructure& S, const LeveledElement& x, int budget,
                                std::uint64_t seed, const std::optional<NormEvaluator>& inner) {
  detail::require_element(S, x);
  PositivisationResult res;
  res.budget = budget;
  res.seed = seed;
  const int n = x.level(), d = x.base_dim();
  if (x.max_abs() == 0.0) {
    res.completion.x1 = res.completion.x2 = LeveledElement(n, d);
    res.completion.method = res.method = "zero";
    return res;
  }
  const NormEvaluator ev = inner ? *inner : norm_evaluator(S);
  BlockWitness w;
  try {
    w = generation_witness(S, x);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoWitnessFound) throw;
    throw Error(ErrorCode::Infeasible, "no positive completion found");
  }
  if (inner) w = balanced(ev, w.x1, w.x2, w.method);
  BlockWitness best = w;
  res.method = "witness: " + w.method;

  // skipping descent only loosens value_upper, so an inner lower bound is enough to stop here
  const bool attained = inner ? w.value <= ev(x).lower * (1.0 + 1e-12)
                              : one_normal(S) && w.value <= level_norm(S, x).lower * (1.0 + 1e-12);
  if (descent_supported(S) && budget > 0 && !attained) {
    OptimizerConfig light = S.config();
    light.restarts = std::min(light.restarts, 4);
    const MatricialStructure Sl = S.with_config(light);
    const NormEvaluator ev_light = inner ? ev : norm_evaluator(Sl);
    SchurParam sp(S, x);
    auto objective = [&](const std::vector<double>& p) {
      auto c = sp.build(p);
      return std::sqrt(ev_light(c.first).upper * ev_light(c.second).upper);
    };
    const int iters = inner ? std::min(S.config().iterations, kInnerDescentIterations)
                            : S.config().iterations;
    auto r = detail::nelder_mead(objective, sp.start(w.x2), 0.1, iters);
    auto c = sp.build(r.x);
    BlockWitness cand = balanced(ev, c.first, c.second, "schur-complement descent");
    if (cand.value < best.value &&
        !cone_member(S, witness_block(S.base(), cand, x), 1e-8).non_member()) {
      best = cand;
      res.method += ", refined by descent";
    }
  }
  res.completion = best;
  res.value_upper = best.value;
  if (!inner) {
    Rng rng(seed);
    res.value_lower = dual_lower(S, x, budget, rng);
    // both sides attain alpha for 1-normal, 1-generating structures; drop the rounding excess
    if (res.value_lower > res.value_upper && res.value_lower <= res.value_upper * (1.0 + 1e-9))
      res.value_lower = res.value_upper;
  }
  return res;
}

NormEvaluator alpha_plus_evaluator(const MatricialStructure& S, int budget, std::uint64_t seed) {
  return [S, budget, seed](const LeveledElement& y) {
    PositivisationResult r = alpha_plus(S, y, budget, seed);
    NormBracket b;
    b.lower = std::min(r.value_lower, r.value_upper);
    b.upper = r.value_upper;
    b.method = "alpha+";
    return b;
  };
}

AlphaPlusProperties alpha_plus_properties(const MatricialStructure& S, int level, int budget,
                                          std::uint64_t seed, double tol) {
  AlphaPlusProperties rep;
  rep.ruan_compression.name = "alpha+ compression";
  rep.ruan_direct_sum.name = "alpha+ direct sum";
  rep.regularity.name = "alpha+ 1-normality";
  rep.seminorm.name = "alpha+ seminorm";
  rep.idempotence.name = "alpha+ idempotence";
  Rng rng(seed);
  const int inner_budget = 8;
  auto ap = [&](const LeveledElement& y) { return alpha_plus(S, y, inner_budget, seed); };
  const NormEvaluator twice = alpha_plus_evaluator(S, inner_budget, seed);
  auto excess = [](double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs - 1.0 : lhs; };
  auto note = [](AxiomReport& r, double ex, double limit, const std::string& what) {
    ++r.trials;
    r.worst_excess = std::max(r.worst_excess, ex);
    if (ex > limit) r.fail(what);
  };

  for (int t = 0; t < budget; ++t) {
    const int n = 1 + t % level;
    LeveledElement x = random_element(S.base(), n, rng);
    PositivisationResult rx = ap(x);

    // compression by contractions
    const int k = 1 + (t / 2) % level;
    Mat a = random_contraction(rng, k, n), b = random_contraction(rng, k, n);
    double ab = schatten_norm(a, kInf) * schatten_norm(b, kInf);
    PositivisationResult rc = ap(compress(a, x, b));
    note(rep.ruan_compression, excess(rc.value_upper, ab * rx.value_upper), tol,
         "trial " + std::to_string(t));

    // direct sum equality
    LeveledElement y = random_element(S.base(), n, rng);
    PositivisationResult ry = ap(y);
    PositivisationResult rs = ap(direct_sum(x, y));
    double mx = std::max(rx.value_upper, ry.value_upper);
    note(rep.ruan_direct_sum, std::abs(excess(rs.value_upper, mx)), tol,
         "trial " + std::to_string(t));

    // subadditivity and homogeneity
    PositivisationResult rxy = ap(x + y);
    note(rep.seminorm, excess(rxy.value_upper, rx.value_upper + ry.value_upper), tol,
         "subadditivity, trial " + std::to_string(t));
    double s = 0.25 + 2.0 * uniform01(rng);
    PositivisationResult rsx = ap(cplx(0.0, s) * x);
    note(rep.seminorm, std::abs(excess(rsx.value_upper, s * rx.value_upper)), tol,
         "homogeneity, trial " + std::to_string(t));

    // off-diagonal block of a positive element
    LeveledElement U = random_cone_element(S, 2 * n, rng);
    PositivisationResult r1 = ap(sub_block(U, 0, 0, n)), r2 = ap(sub_block(U, n, n, n));
    PositivisationResult ru = ap(sub_block(U, 0, n, n));
    note(rep.regularity, excess(ru.value_upper, std::max(r1.value_upper, r2.value_upper)), tol,
         "trial " + std::to_string(t));

    // second pass with alpha+ as the inner norm
    PositivisationResult again = alpha_plus(S, x, inner_budget, seed, twice);
    double gap = std::abs(excess(again.value_upper, rx.value_upper));
    rep.idempotence_gap = std::max(rep.idempotence_gap, gap);
    note(rep.idempotence, gap, 2.0 * tol, "trial " + std::to_string(t));
  }
  return rep;
}

RenormReport renorm_bounds_check(const MatricialStructure& S, int level, int budget,
                                 std::uint64_t seed, double c_generation, double c_normality,
                                 double tol) {
  RenormReport rep;
  rep.c_generation = c_generation;
  rep.c_normality = c_normality;
  Rng rng(seed);
  for (int t = 0; t < budget; ++t) {
    const int n = 1 + t % level;
    LeveledElement x = t % 3 == 0 ? random_cone_element(S, n, rng)
                                  : random_element(S.base(), n, rng);
    NormBracket a = level_norm(S, x);
    PositivisationResult r = alpha_plus(S, x, 16, seed + t);
    ++rep.samples;
    double up = r.value_upper / (c_generation * a.upper);
    double lo = r.value_lower / (a.lower / c_normality);
    rep.worst_upper_ratio = std::max(rep.worst_upper_ratio, up);
    rep.worst_lower_ratio = std::min(rep.worst_lower_ratio, lo);
    if (up > 1.0 + tol) ++rep.upper_violations;
    if (lo < 1.0 - tol) ++rep.lower_violations;
  }
  return rep;
}

}  // namespace matord
