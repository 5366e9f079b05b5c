#include "matord/am_obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "internal.hpp"

namespace matord {

bool AmObstructionReport::passed() const {
  return dominating > 0 && expectation_ok == dominating && norm_ok == dominating;
}

namespace {

std::vector<Mat> signed_symmetric_permutations(int N) {
  std::vector<Mat> out;
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool involution = true;
    for (int i = 0; i < N; ++i) involution = involution && perm[perm[i]] == i;
    if (!involution) continue;
    for (int mask = 0; mask < (1 << N); ++mask) {
      bool consistent = true;
      for (int i = 0; i < N; ++i)
        consistent = consistent && (((mask >> i) & 1) == ((mask >> perm[i]) & 1));
      if (!consistent) continue;
      Mat S = Mat::Zero(N, N);
      for (int i = 0; i < N; ++i) S(i, perm[i]) = ((mask >> i) & 1) ? -1.0 : 1.0;
      out.push_back(S);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::stable_sort(out.begin(), out.end(), [](const Mat& a, const Mat& b) {
    return std::abs(a.trace().real()) < std::abs(b.trace().real());
  });
  return out;
}

double anticommutator_sum(const std::vector<Mat>& U) {
  double acc = 0.0;
  for (size_t i = 0; i < U.size(); ++i)
    for (size_t j = i + 1; j < U.size(); ++j) acc += singular_values(U[i] * U[j] + U[j] * U[i])(0);
  return acc;
}

bool family_ok(const std::vector<Mat>& U, double tol) {
  const int N = static_cast<int>(U.front().rows());
  for (size_t i = 0; i < U.size(); ++i) {
    if ((U[i] - U[i].transpose()).cwiseAbs().maxCoeff() > tol) return false;
    if ((U[i] * U[i].transpose() - Mat::Identity(N, N)).cwiseAbs().maxCoeff() > tol) return false;
    if (U[i].imag().cwiseAbs().maxCoeff() > tol) return false;
    for (size_t j = i + 1; j < U.size(); ++j)
      if (std::abs((U[i] * U[j]).trace()) > tol) return false;
  }
  return true;
}

}  // namespace

std::vector<Mat> symmetric_orthogonal_family(int n, int N, std::uint64_t seed) {
  if (n < 1 || N < 1 || N > 6)
    throw Error(ErrorCode::MatrixFamilyNotFound, "search supports 1 <= N <= 6");
  const std::vector<Mat> cands = signed_symmetric_permutations(N);
  std::vector<int> chosen, best;
  double best_penalty = kInf;
  long nodes = 0;
  std::function<void(size_t, double)> dfs = [&](size_t start, double penalty) {
    if (penalty >= best_penalty - 1e-12 || best_penalty == 0.0) return;
    if (static_cast<int>(chosen.size()) == n) {
      best = chosen;
      best_penalty = penalty;
      return;
    }
    for (size_t c = start; c < cands.size(); ++c) {
      if (++nodes > 2000000) return;
      double extra = 0.0;
      bool orth = true;
      for (int o : chosen) {
        orth = orth && std::abs((cands[o] * cands[c]).trace()) < 0.5;
        if (!orth) break;
        extra += singular_values(cands[o] * cands[c] + cands[c] * cands[o])(0);
      }
      if (!orth) continue;
      chosen.push_back(static_cast<int>(c));
      dfs(c + 1, penalty + extra);
      chosen.pop_back();
    }
  };
  dfs(0, 0.0);
  if (best.empty())
    throw Error(ErrorCode::MatrixFamilyNotFound,
                "no trace-orthogonal symmetric orthogonal family of size " + std::to_string(n) +
                    " in dimension " + std::to_string(N));
  std::vector<Mat> U;
  for (int c : best) U.push_back(cands[c]);
  // a random real orthogonal conjugation preserves every required property
  if (seed != 0) {
    Rng rng(seed);
    Mat O = random_orthogonal(rng, N);
    std::vector<Mat> V;
    for (const Mat& u : U) V.push_back((O * u * O.transpose()).real().cast<cplx>());
    for (Mat& v : V) v = 0.5 * (v + v.transpose()).eval();
    if (family_ok(V, 1e-10)) U = V;
  }
  if (!family_ok(U, 1e-10)) throw Error(ErrorCode::MatrixFamilyNotFound, "family failed verification");
  return U;
}

AmObstructionReport am_obstruction(const BaseSpace& X, int n, int N, int budget,
                                   std::uint64_t seed) {
  if (!X.is_lattice()) throw Error(ErrorCode::ModelMismatch, "am_obstruction needs a lattice");
  if (n < 1 || n > X.dim) throw Error(ErrorCode::DimensionMismatch, "need 1 <= n <= dim");
  AmObstructionReport rep;
  rep.n = n;
  rep.N = N;
  rep.budget = budget;
  rep.seed = seed;
  rep.family = symmetric_orthogonal_family(n, N, seed);
  rep.anticommutator_sum = anticommutator_sum(rep.family);

  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Mat> coords(X.dim, Mat::Zero(N, N));
  Vec sum = Vec::Zero(X.dim);
  for (int i = 0; i < n; ++i) {
    coords[i] = c * rep.family[i];
    sum(i) = c;
  }
  LeveledElement u(coords);
  MatricialStructure S(X, Kind::Min);
  // dual ball |f_i| <= w_i; split f into real and imaginary parts and bound
  // ||sum g_i U_i||^2 = ||(sum g_i U_i)^2|| for real g
  double weight_max = X.weights.size() ? X.weights.head(n).maxCoeff() : 1.0;
  rep.factorization_upper =
      X.p == 1.0 ? 2.0 * c * weight_max * std::sqrt(n + rep.anticommutator_sum) : kInf;
  rep.u_norm_upper = std::min(rep.factorization_upper, level_norm(S, u).upper);
  rep.sum_norm = base_norm(X, sum);
  rep.bound = rep.sum_norm / rep.u_norm_upper;

  Rng rng(seed);
  const bool exact = N == 2;
  const int mc = 100000;
  rep.averaging = exact ? "circle quadrature, 8 nodes" : "monte carlo, 1e5 samples";
  const double delta = 1e-9;
  rep.worst_slack = kInf;
  std::vector<Vec> nodes;
  if (exact) {
    for (int j = 0; j < 8; ++j) {
      double t = 2.0 * M_PI * j / 8.0;
      Vec xi(2);
      xi << std::cos(t), std::sin(t);
      nodes.push_back(xi);
    }
  } else {
    for (int j = 0; j < mc; ++j) {
      Vec xi(N);
      for (int i = 0; i < N; ++i) xi(i) = normal01(rng);
      nodes.push_back(xi / xi.norm());
    }
  }
  for (int t = 0; t < budget; ++t) {
    std::vector<Mat> a(X.dim);
    const double scale = uniform01(rng);
    for (int k = 0; k < X.dim; ++k) {
      Mat base = k < n ? Mat(c * hermitian_abs(rep.family[k])) : Mat::Zero(N, N);
      if (t % 2 == 0)
        a[k] = base + scale * random_psd(rng, N, 1 + t % N);
      else
        a[k] = base + 0.1 * scale * random_hermitian(rng, N);
    }
    ++rep.samples;
    bool dominates = true;
    for (int k = 0; k < X.dim; ++k) {
      dominates = dominates && detail::check_psd(a[k] - coords[k], 1e-10).psd &&
                  detail::check_psd(a[k] + coords[k], 1e-10).psd;
    }
    if (!dominates) continue;
    ++rep.dominating;
    Vec E(X.dim);
    bool expect = true;
    for (int k = 0; k < X.dim; ++k) {
      double acc = 0.0;
      for (const Vec& xi : nodes) acc += (xi.adjoint() * a[k] * xi)(0).real();
      E(k) = acc / static_cast<double>(nodes.size());
      double margin = 0.0;
      if (!exact) {
        RVec ev = hermitian_eigen(hermitian_part(a[k])).values;
        margin = (ev(N - 1) - ev(0)) * std::sqrt(std::log(2.0 / delta) / (2.0 * mc));
      }
      rep.margin = std::max(rep.margin, margin);
      double target = sum(k).real();
      rep.worst_slack = std::min(rep.worst_slack, E(k).real() + margin - target);
      expect = expect && E(k).real() + margin >= target - 1e-12;
    }
    if (expect) ++rep.expectation_ok;
    // alpha(a) >= ||E<xi|a|xi>|| >= ||sum x_i||
    double alpha_a = level_norm(S, LeveledElement(a)).upper;
    if (alpha_a >= base_norm(X, E) * (1.0 - 1e-12) - rep.margin * X.dim) ++rep.norm_ok;
  }
  return rep;
}

}  // namespace matord
