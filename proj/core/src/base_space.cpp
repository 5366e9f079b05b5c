#include "matord/base_space.hpp"

#include <algorithm>
#include <cmath>

#include "optimize.hpp"

namespace matord {

const char* model_name(BaseModel model) {
  switch (model) {
    case BaseModel::LatticeLp: return "lattice_lp";
    case BaseModel::Schatten: return "schatten";
    case BaseModel::Custom: return "custom";
  }
  return "unknown";
}

static void check_p(double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidP, "p must be in [1, inf]");
}

static Vec unit(int d, int k) {
  Vec e = Vec::Zero(d);
  e(k) = 1.0;
  return e;
}

// Rank-one projectors spanning the hermitian m x m matrices.
static std::vector<Vec> projector_mesh(int m) {
  std::vector<Vec> out;
  for (int k = 0; k < m; ++k) {
    Vec e = Vec::Zero(m);
    e(k) = 1.0;
    out.push_back(from_square(e * e.adjoint()));
  }
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      for (cplx ph : {cplx(1, 0), cplx(0, 1)}) {
        Vec e = Vec::Zero(m);
        e(k) = 1.0 / std::sqrt(2.0);
        e(l) = ph / std::sqrt(2.0);
        out.push_back(from_square(e * e.adjoint()));
      }
    }
  return out;
}

BaseSpace BaseSpace::lattice(int d, double p, RVec weights) {
  check_p(p);
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "dim must be >= 1");
  BaseSpace X;
  X.model = BaseModel::LatticeLp;
  X.dim = d;
  X.p = p;
  if (weights.size() == 0) weights = RVec::Ones(d);
  if (weights.size() != d) throw Error(ErrorCode::DimensionMismatch, "weights length != dim");
  if ((weights.array() <= 0.0).any() || !weights.allFinite())
    throw Error(ErrorCode::MalformedInput, "lattice weights must be positive and finite");
  X.weights = weights;
  for (int k = 0; k < d; ++k) {
    X.cone_generators.push_back(unit(d, k));
    X.dual_generators.push_back(unit(d, k));
  }
  return X;
}

BaseSpace BaseSpace::schatten(int m, double p) {
  check_p(p);
  if (m < 1) throw Error(ErrorCode::DimensionMismatch, "m must be >= 1");
  BaseSpace X;
  X.model = BaseModel::Schatten;
  X.m = m;
  X.dim = m * m;
  X.p = p;
  X.weights = RVec::Ones(X.dim);
  X.cone_generators = projector_mesh(m);
  X.dual_generators = projector_mesh(m);
  X.exact_psd_oracle = true;
  X.involution = Involution::MatrixAdjoint;
  return X;
}

BaseSpace BaseSpace::custom(int d, double p, std::vector<Vec> cone, std::vector<Vec> dual,
                            bool pointed) {
  check_p(p);
  if (d < 1) throw Error(ErrorCode::DimensionMismatch, "dim must be >= 1");
  for (const auto* list : {&cone, &dual})
    for (const Vec& g : *list) {
      if (g.size() != d) throw Error(ErrorCode::DimensionMismatch, "generator length != dim");
      if (!g.allFinite()) throw Error(ErrorCode::NonFinite, "generator not finite");
      if (g.imag().cwiseAbs().maxCoeff() > 0.0)
        throw Error(ErrorCode::MalformedInput, "custom generators must be real");
    }
  BaseSpace X;
  X.model = BaseModel::Custom;
  X.dim = d;
  X.p = p;
  X.weights = RVec::Ones(d);
  X.cone_generators = std::move(cone);
  X.dual_generators = std::move(dual);
  X.pointed = pointed;
  return X;
}

bool BaseSpace::independent_generators() const {
  if (cone_generators.empty()) return true;
  if (static_cast<int>(cone_generators.size()) > dim) return false;
  Mat G(dim, cone_generators.size());
  for (size_t j = 0; j < cone_generators.size(); ++j) G.col(j) = cone_generators[j];
  Eigen::ColPivHouseholderQR<Mat> qr(G);
  qr.setThreshold(1e-10);
  return qr.rank() == static_cast<int>(cone_generators.size());
}

static bool close(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

static bool close_lists(const std::vector<Vec>& a, const std::vector<Vec>& b, double rel) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size() || (a[i] - b[i]).cwiseAbs().maxCoeff() > rel) return false;
  return true;
}

bool same_space(const BaseSpace& a, const BaseSpace& b, double rel_tol) {
  if (a.model != b.model || a.dim != b.dim || a.m != b.m || !close(a.p, b.p, rel_tol)) return false;
  if (a.pointed != b.pointed || a.involution != b.involution) return false;
  if (a.weights.size() != b.weights.size()) return false;
  for (int k = 0; k < a.weights.size(); ++k)
    if (!close(a.weights(k), b.weights(k), rel_tol)) return false;
  return close_lists(a.cone_generators, b.cone_generators, rel_tol) &&
         close_lists(a.dual_generators, b.dual_generators, rel_tol);
}

BaseSpace dual(const BaseSpace& X) {
  double q = conjugate_exponent(X.p);
  switch (X.model) {
    case BaseModel::LatticeLp:
      return BaseSpace::lattice(X.dim, q, X.weights.cwiseInverse());
    case BaseModel::Schatten:
      return BaseSpace::schatten(X.m, q);
    case BaseModel::Custom:
      return BaseSpace::custom(X.dim, q, X.dual_generators, X.cone_generators, X.pointed);
  }
  return X;
}

static void check_vec(const BaseSpace& X, const Vec& v) {
  if (v.size() != X.dim) throw Error(ErrorCode::DimensionMismatch, "vector length != dim");
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, "vector not finite");
}

Mat to_square(const BaseSpace& X, const Vec& v) {
  if (!X.is_schatten()) throw Error(ErrorCode::WrongBaseModel, "not a Schatten base");
  check_vec(X, v);
  Mat V(X.m, X.m);
  for (int k = 0; k < X.m; ++k)
    for (int l = 0; l < X.m; ++l) V(k, l) = v(k * X.m + l);
  return V;
}

Vec from_square(const Mat& V) {
  const int m = static_cast<int>(V.rows());
  Vec v(m * m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) v(k * m + l) = V(k, l);
  return v;
}

double base_norm(const BaseSpace& X, const Vec& v) {
  check_vec(X, v);
  if (X.is_schatten()) return schatten_norm(to_square(X, v), X.p);
  if (X.is_custom() && X.norm_oracle != "lp")
    throw Error(ErrorCode::ModelMismatch, "unknown norm oracle " + X.norm_oracle);
  return lp_norm(X.weights.cwiseProduct(v.cwiseAbs()), X.p);
}

double dual_norm(const BaseSpace& X, const Vec& f) { return base_norm(dual(X), f); }

Vec norming_functional(const BaseSpace& X, const Vec& v) {
  check_vec(X, v);
  if (X.is_schatten()) {
    // maximiser of Re tr(F V^T) over the S_q ball is the transpose of the
    // maximiser of Re tr(Y V)
    Mat Y = schatten_norming(to_square(X, v), conjugate_exponent(X.p));
    return from_square(Y.transpose());
  }
  Vec u = X.weights.cast<cplx>().cwiseProduct(v);
  RVec a = u.cwiseAbs();
  const int d = X.dim;
  Vec g = Vec::Zero(d);
  double nrm = lp_norm(a, X.p);
  if (nrm == 0.0) {
    g(0) = 1.0;
  } else if (std::isinf(X.p)) {
    int k = 0;
    a.maxCoeff(&k);
    g(k) = std::conj(u(k)) / a(k);
  } else if (X.p == 1.0) {
    for (int k = 0; k < d; ++k) g(k) = a(k) > 0 ? std::conj(u(k)) / a(k) : cplx(1.0, 0.0);
  } else {
    for (int k = 0; k < d; ++k)
      if (a(k) > 0) g(k) = std::conj(u(k)) / a(k) * std::pow(a(k) / nrm, X.p - 1.0);
  }
  // <f, v> = sum g_k w_k v_k and ||f||_* = ||(f_k / w_k)||_q = ||g||_q
  return g.cwiseProduct(X.weights.cast<cplx>());
}

bool base_cone_member(const BaseSpace& X, const Vec& v, double tol) {
  if (v.size() != X.dim || !v.allFinite()) return false;
  if (X.is_schatten()) {
    Mat V = to_square(X, v);
    if (max_abs_entry(V - V.adjoint()) > tol * std::max(1.0, max_abs_entry(V))) return false;
    return is_psd(hermitian_part(V), tol);
  }
  if (X.is_lattice()) {
    for (int k = 0; k < X.dim; ++k)
      if (std::abs(v(k).imag()) > tol || v(k).real() < -tol) return false;
    return true;
  }
  if (v.imag().cwiseAbs().maxCoeff() > tol) return false;
  for (const Vec& f : X.dual_generators)
    if (pair(f, v).real() < -tol) return false;
  return true;
}

Vec involution(const BaseSpace& X, const Vec& v) {
  check_vec(X, v);
  if (X.is_schatten()) return from_square(to_square(X, v).adjoint());
  return v.conjugate();
}

LeveledElement adjoint(const BaseSpace& X, const LeveledElement& x) {
  if (x.base_dim() != X.dim) throw Error(ErrorCode::BaseSpaceMismatch, "element over another base");
  return adjoint(x, X.involution, X.m);
}

bool is_hermitian_element(const BaseSpace& X, const LeveledElement& x, double tol) {
  LeveledElement diff = x - adjoint(X, x);
  return diff.max_abs() <= tol * std::max(1.0, x.max_abs());
}

LeveledElement hermitian_part(const BaseSpace& X, const LeveledElement& x) {
  return 0.5 * (x + adjoint(X, x));
}

Mat realign(const BaseSpace& X, const LeveledElement& x) {
  if (!X.is_schatten()) throw Error(ErrorCode::WrongBaseModel, "realignment needs a Schatten base");
  if (x.base_dim() != X.dim) throw Error(ErrorCode::BaseSpaceMismatch, "element over another base");
  return realign_schatten(x, X.m);
}

LeveledElement unrealign(const BaseSpace& X, const Mat& R, int n) {
  if (!X.is_schatten()) throw Error(ErrorCode::WrongBaseModel, "realignment needs a Schatten base");
  return unrealign_schatten(R, n, X.m);
}

Vec random_cone_vector(const BaseSpace& X, Rng& rng) {
  if (X.is_schatten()) {
    int rank = 1 + static_cast<int>(uniform01(rng) * X.m);
    return from_square(random_psd(rng, X.m, std::min(rank, X.m)));
  }
  if (X.is_lattice()) {
    Vec v(X.dim);
    for (int k = 0; k < X.dim; ++k) {
      double u = uniform01(rng);
      v(k) = u < 0.15 ? 0.0 : -std::log(u);
    }
    return v;
  }
  Vec v = Vec::Zero(X.dim);
  for (const Vec& g : X.cone_generators) v += -std::log(uniform01(rng) + 1e-300) * g;
  return v;
}

Vec random_hermitian_vector(const BaseSpace& X, Rng& rng) {
  if (X.is_schatten()) return from_square(random_hermitian(rng, X.m));
  return random_real(rng, X.dim, 1).col(0);
}

namespace {

// min ||y|| over y = sum c_j g_j, c >= 0, with y - x and y + x in the cone
// (feasibility measured against the dual generators).
Vec custom_generation(const BaseSpace& X, const Vec& x) {
  const int r = static_cast<int>(X.cone_generators.size());
  auto assemble = [&](const std::vector<double>& th) {
    Vec y = Vec::Zero(X.dim);
    for (int j = 0; j < r; ++j) y += th[j] * th[j] * X.cone_generators[j];
    return y;
  };
  auto repair = [&](Vec y) -> Vec {
    // scale y up until it dominates +-x
    double s = 1.0;
    for (const Vec& f : X.dual_generators) {
      double need = std::abs(pair(f, x).real());
      double have = pair(f, y).real();
      if (need <= 1e-14) continue;
      if (have <= 0.0) return Vec();
      s = std::max(s, need / have);
    }
    return s * y;
  };
  auto objective = [&](const std::vector<double>& th) {
    Vec y = assemble(th);
    double pen = 0.0;
    for (const Vec& f : X.dual_generators)
      pen += std::max(0.0, std::abs(pair(f, x).real()) - pair(f, y).real());
    return base_norm(X, y) + 1e3 * pen;
  };
  double xn = std::max(base_norm(X, x), 1e-300);
  std::vector<double> th0(r, std::sqrt(xn));
  Vec best;
  double best_val = kInf;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto res = detail::nelder_mead(objective, th0, 0.3 * std::sqrt(xn), 4000, 1e-12);
    Vec y = repair(assemble(res.x));
    if (y.size() > 0) {
      double val = base_norm(X, y);
      if (val < best_val) {
        best_val = val;
        best = y;
      }
    }
    th0 = res.x;
  }
  if (best.size() == 0) throw Error(ErrorCode::NoWitnessFound, "no dominating element found");
  return best;
}

}  // namespace

ScalarRegularityReport scalar_regularity(const BaseSpace& X, int budget, std::uint64_t seed) {
  if (budget < 1) throw Error(ErrorCode::MalformedInput, "budget must be >= 1");
  Rng rng(seed);
  ScalarRegularityReport rep;
  rep.budget = budget;
  rep.seed = seed;
  const double tol = 1e-9;

  // normality: y = a + b, x = a - b with a, b in the cone gives y +- x in the cone
  for (int t = 0; t < budget; ++t) {
    Vec a = random_cone_vector(X, rng);
    Vec b = t == 0 ? Vec::Zero(X.dim) : random_cone_vector(X, rng);
    if (!X.is_schatten() && t % 3 == 1 && X.cone_generators.size() >= 2) {
      a = X.cone_generators[t % X.cone_generators.size()];
      b = X.cone_generators[(t + 1) % X.cone_generators.size()];
    }
    Vec y = a + b, x = a - b;
    double ny = base_norm(X, y);
    if (ny <= 0.0) continue;
    double ratio = base_norm(X, x) / ny;
    if (ratio > rep.normality_lower_bound) {
      rep.normality_lower_bound = ratio;
      rep.normality_witnesses = {{x / ny, y / ny}};
    }
  }

  // generation: closed forms for lattices and Schatten, optimisation otherwise
  for (int t = 0; t < budget; ++t) {
    Vec x = random_hermitian_vector(X, rng);
    double nx = base_norm(X, x);
    if (nx <= 0.0) continue;
    x /= nx;
    Vec y;
    if (X.is_lattice()) {
      y = x.cwiseAbs().cast<cplx>();
    } else if (X.is_schatten()) {
      y = from_square(hermitian_abs(to_square(X, x)));
    } else {
      y = custom_generation(X, x);
    }
    if (!base_cone_member(X, y - x, tol * std::max(1.0, y.cwiseAbs().maxCoeff())) ||
        !base_cone_member(X, y + x, tol * std::max(1.0, y.cwiseAbs().maxCoeff())))
      throw Error(ErrorCode::NoWitnessFound, "generation witness failed to verify");
    double val = base_norm(X, y);
    if (val > rep.generation_upper_bound) {
      rep.generation_upper_bound = val;
      rep.generation_witnesses = {{x, y}};
    }
  }
  return rep;
}

}  // namespace matord
