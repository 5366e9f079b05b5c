#include "matord/duality.hpp"

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "matord/regularity.hpp"

namespace matord {

Mat pairing(const LeveledElement& x_flat, const LeveledElement& x) {
  if (x_flat.base_dim() != x.base_dim())
    throw Error(ErrorCode::DimensionMismatch, "pairing needs equal base dimensions");
  const int n = x_flat.level(), m = x.level();
  Mat P = Mat::Zero(n * m, n * m);
  for (int t = 0; t < x.base_dim(); ++t) P += kron(x.coord(t), x_flat.coord(t));
  return P;
}

MatricialStructure dual_structure(const MatricialStructure& S) {
  BaseSpace D = dual(S.base());
  Kind k = S.kind();
  switch (S.kind()) {
    case Kind::Min: k = Kind::Max; break;
    case Kind::Max: k = Kind::Min; break;
    case Kind::Schatten:
    case Kind::MatrixSystem: k = Kind::Schatten; break;
  }
  return MatricialStructure(D, k, S.config(), 1.0 / S.scale());
}

bool exact_norms(const MatricialStructure& S) {
  const BaseSpace& X = S.base();
  switch (S.kind()) {
    case Kind::MatrixSystem: return true;
    case Kind::Schatten: return std::isinf(X.p) || X.p == 2.0;
    case Kind::Min: return X.is_lattice() && std::isinf(X.p);
    case Kind::Max: return X.is_lattice() && X.p == 1.0;
  }
  return false;
}

ConeVerdict dual_cone_member(const MatricialStructure& S, const LeveledElement& x_flat,
                             double tol) {
  MatricialStructure D = dual_structure(S);
  detail::require_element(D, x_flat);
  if (S.kind() == Kind::Min || S.kind() == Kind::Max) {
    ConeVerdict v = cone_member(D, x_flat, tol);
    v.method = std::string("dual structure ") + kind_name(D.kind()) + ": " + v.method;
    return v;
  }
  ConeVerdict v;
  v.tol = tol;
  v.method = "realigned dual element";
  auto chk = detail::check_psd(realign(D.base(), x_flat), tol);
  if (!chk.hermitian) throw Error(ErrorCode::NonHermitianInput, "dual element is not hermitian");
  v.verdict = chk.psd ? Verdict::Member : Verdict::NonMember;
  if (!chk.psd) {
    v.certificate.type = "eigenvector";
    v.certificate.vector = chk.vector;
    v.certificate.value = chk.min_eig;
  }
  return v;
}

ConeVerdict dual_cone_sampled(const MatricialStructure& S, const LeveledElement& x_flat,
                              int samples, std::uint64_t seed, double tol) {
  Rng rng(seed);
  ConeVerdict v;
  v.tol = tol;
  v.method = "sampled primal pairings";
  const int n = x_flat.level();
  for (int t = 0; t < samples; ++t) {
    LeveledElement u = random_cone_element(S, n, rng);
    auto chk = detail::check_psd(pairing(x_flat, u), tol);
    if (!chk.psd) {
      v.verdict = Verdict::NonMember;
      v.certificate.type = "primal sample";
      v.certificate.coefficients = u.coords();
      v.certificate.vector = chk.vector;
      v.certificate.value = chk.min_eig;
      return v;
    }
  }
  v.certificate.note = "no falsifying primal sample";
  return v;
}

Mat products_block(const LeveledElement& primal_block, const LeveledElement& dual_block) {
  const int n = primal_block.level() / 2, k = dual_block.level() / 2;
  auto sub = [](const LeveledElement& x, int r, int c, int s) { return sub_block(x, r * s, c * s, s); };
  Mat a = pairing(sub(dual_block, 0, 0, k), sub(primal_block, 0, 0, n));
  Mat b = pairing(sub(dual_block, 0, 1, k), sub(primal_block, 0, 1, n));
  Mat d = pairing(sub(dual_block, 1, 1, k), sub(primal_block, 1, 1, n));
  Mat B(a.rows() + d.rows(), a.cols() + d.cols());
  B << a, b, b.adjoint(), d;
  return B;
}

ProductsReport products_check(int budget, std::uint64_t seed, double tol) {
  Rng rng(seed);
  ProductsReport rep;
  rep.worst_min_eig = kInf;
  const double ps[] = {1.0, 2.0, kInf};
  for (int t = 0; t < budget; ++t) {
    MatricialStructure S = t % 3 == 2
        ? MatricialStructure(BaseSpace::lattice(3, ps[t % 3]), Kind::Min)
        : MatricialStructure(BaseSpace::schatten(2, ps[t % 3]), Kind::Schatten);
    MatricialStructure D = dual_structure(S);
    const int n = 1 + t % 2, k = 1 + (t / 2) % 2;
    LeveledElement u = random_cone_element(S, 2 * n, rng);
    LeveledElement f = random_cone_element(D, 2 * k, rng);
    if (t % 7 == 0) {
      // zero off-diagonal blocks
      u = direct_sum(sub_block(u, 0, 0, n), sub_block(u, n, n, n));
    }
    Mat B = hermitian_part(products_block(u, f));
    double scale = std::max(schatten_norm(B, 1.0), 1e-300);
    double e = min_eigenvalue(B) / scale;
    ++rep.trials;
    rep.worst_min_eig = std::min(rep.worst_min_eig, e);
    if (e < -tol) ++rep.failures;
  }
  return rep;
}

GenNormalDualityReport gen_normal_duality_probe(const MatricialStructure& S, int n, int budget,
                                                std::uint64_t seed, double constant,
                                                double tol) {
  GenNormalDualityReport rep;
  rep.constant = constant;
  MatricialStructure D = dual_structure(S);
  rep.primal_exact = exact_norms(S);
  rep.dual_exact = exact_norms(D);
  rep.dual_normality_bound = normality_probe(D, n, budget, seed).bound;
  rep.normality_ok = rep.dual_normality_bound <= constant + tol;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int gen = std::max(1, budget / 10);
  for (int t = 0; t < gen; ++t) {
    LeveledElement x = t % 2 ? random_element(D.base(), n, rng)
                             : random_hermitian_element(D.base(), n, rng);
    BlockWitness w = generation_witness(D, x);
    double ratio = w.value / std::max(level_norm(D, x).upper, 1e-300);
    ++rep.samples;
    if (ratio > rep.dual_generation_bound) {
      rep.dual_generation_bound = ratio;
      rep.worst_x = x;
    }
  }
  rep.generation_ok = rep.dual_generation_bound <= constant + tol;
  return rep;
}

}  // namespace matord
