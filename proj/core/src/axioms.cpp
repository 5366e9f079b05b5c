#include "matord/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace matord {

void AxiomReport::fail(const std::string& what) {
  ++violations;
  if (failures.size() < 8) failures.push_back(what);
}

namespace {

int pick(Rng& rng, int lo, int hi) { return lo + static_cast<int>(uniform01(rng) * (hi - lo + 1)) % (hi - lo + 1); }

// lhs <= rhs within rel_tol; records the excess
void check_le(AxiomReport& rep, double lhs, double rhs, double rel_tol, const char* what) {
  double excess = (lhs - rhs) / std::max(std::abs(rhs), 1e-300);
  if (lhs <= rhs) excess = std::min(excess, 0.0);
  rep.worst_excess = std::max(rep.worst_excess, excess);
  if (lhs > rhs * (1.0 + rel_tol) + 1e-12) {
    std::ostringstream os;
    os.precision(12);
    os << what << ": " << lhs << " > " << rhs;
    rep.fail(os.str());
  }
}

}  // namespace

RuanReport ruan_check(const MatricialStructure& S, int budget, std::uint64_t seed, int max_level,
                      double rel_tol) {
  Rng rng(seed);
  RuanReport rep;
  rep.seed = seed;
  rep.compression.name = "ruan-compression";
  rep.direct_sum.name = "ruan-direct-sum";
  const BaseSpace& X = S.base();
  for (int t = 0; t < budget; ++t) {
    // axiom (1): ||a x b^*||_m <= ||a|| ||b|| ||x||_n
    int n = pick(rng, 1, max_level), m = pick(rng, 1, max_level);
    LeveledElement x = random_element(X, n, rng);
    Mat a, b;
    if (t % 10 == 0) {
      m = n;
      a = b = Mat::Identity(n, n);
    } else {
      a = random_complex(rng, m, n);
      b = random_complex(rng, m, n);
    }
    NormBracket nx = level_norm(S, x);
    NormBracket nc = level_norm(S, compress(a, x, b));
    double bound = schatten_norm(a, kInf) * schatten_norm(b, kInf) * nx.upper;
    check_le(rep.compression, nc.lower, bound, rel_tol, "compression");
    if (t % 10 == 0) check_le(rep.compression, nx.lower, nc.upper, rel_tol, "identity compression");
    ++rep.compression.trials;

    // axiom (2): ||x (+) y|| = max(||x||, ||y||)
    int k = pick(rng, 1, max_level), l = pick(rng, 1, max_level);
    if (k + l > max_level + 1) l = std::max(1, max_level + 1 - k);
    LeveledElement u = random_element(X, k, rng);
    LeveledElement v = random_element(X, l, rng);
    NormBracket nu = level_norm(S, u), nv = level_norm(S, v);
    NormBracket ns = level_norm(S, direct_sum(u, v));
    check_le(rep.direct_sum, ns.lower, std::max(nu.upper, nv.upper), rel_tol, "direct sum above max");
    check_le(rep.direct_sum, std::max(nu.lower, nv.lower), ns.upper, rel_tol, "direct sum below max");
    ++rep.direct_sum.trials;
  }
  return rep;
}

ConeAxiomReport cone_axiom_check(const MatricialStructure& S, int budget, std::uint64_t seed,
                                 int level, double tol) {
  Rng rng(seed);
  ConeAxiomReport rep;
  rep.seed = seed;
  rep.compression.name = "cone-compression";
  rep.direct_sum.name = "cone-direct-sum";
  rep.addition.name = "cone-addition";
  rep.scaling.name = "cone-scaling";
  rep.hermitian.name = "cone-hermitian";
  rep.pointedness.name = "cone-pointedness";
  const BaseSpace& X = S.base();
  auto record = [&](AxiomReport& r, const LeveledElement& z, const char* what) {
    ++r.trials;
    ConeVerdict v = cone_member(S, z, tol);
    if (v.verdict == Verdict::Undecided) ++r.undecided;
    if (v.non_member()) r.fail(what);
  };
  for (int t = 0; t < budget; ++t) {
    int n = pick(rng, 1, level);
    LeveledElement x = random_cone_element(S, n, rng);
    LeveledElement y = random_cone_element(S, n, rng);

    int m = pick(rng, 1, level);
    Mat a = t % 25 == 0 ? Mat(Mat::Zero(m, n)) : random_complex(rng, m, n);
    record(rep.compression, compress(a, x, a), "a x a^* left the cone");
    int l = pick(rng, 1, level);
    record(rep.direct_sum, direct_sum(x, random_cone_element(S, l, rng)), "x (+) y left the cone");
    record(rep.addition, x + y, "x + y left the cone");
    double lam = t % 25 == 0 ? 0.0 : -std::log(uniform01(rng) + 1e-300);
    record(rep.scaling, lam * x, "lambda x left the cone");

    ++rep.hermitian.trials;
    if (!is_hermitian_element(X, x, 1e-9)) rep.hermitian.fail("cone member is not hermitian");

    // +-z both in the cone only for z = 0 when the base is pointed
    if (X.pointed) {
      LeveledElement z = t % 2 ? x : random_hermitian_element(X, n, rng);
      ++rep.pointedness.trials;
      if (z.max_abs() > 1e-6) {
        ConeVerdict vp = cone_member(S, z, tol);
        ConeVerdict vm = cone_member(S, -1.0 * z, tol);
        if (vp.member() && vm.member()) rep.pointedness.fail("x and -x both in the cone");
      }
    }
  }
  return rep;
}

}  // namespace matord
