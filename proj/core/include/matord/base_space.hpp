#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matord/linalg.hpp"
#include "matord/random.hpp"

namespace matord {

enum class BaseModel { LatticeLp, Schatten, Custom };

const char* model_name(BaseModel model);

// A finite-dimensional ordered complex Banach space.
//
// LatticeLp: C^d with ||v|| = ||(w_k v_k)_k||_p, cone = nonnegative orthant.
// Schatten:  S_p^m flattened row-major (index k*m+l), cone = PSD matrices.
// Custom:    C^d with an unweighted l_p norm and a polyhedral cone given by
//            real generators and real dual generators.
//
// The pairing with the dual space is the bilinear form <f, v> = sum_k f_k v_k,
// which is tr(F V^T) in matrix coordinates.
struct BaseSpace {
  BaseModel model = BaseModel::LatticeLp;
  int dim = 1;
  double p = kInf;
  int m = 0;
  RVec weights;
  std::string norm_oracle = "lp";
  std::vector<Vec> cone_generators;
  std::vector<Vec> dual_generators;
  bool pointed = true;
  // Schatten: the generator lists are a finite mesh; membership uses the
  // exact PSD test instead.
  bool exact_psd_oracle = false;
  Involution involution = Involution::CoordinateConjugation;

  static BaseSpace lattice(int d, double p, RVec weights = RVec());
  static BaseSpace schatten(int m, double p);
  static BaseSpace custom(int d, double p, std::vector<Vec> cone, std::vector<Vec> dual,
                          bool pointed);

  bool is_lattice() const { return model == BaseModel::LatticeLp; }
  bool is_schatten() const { return model == BaseModel::Schatten; }
  bool is_custom() const { return model == BaseModel::Custom; }
  // True when the cone generators are linearly independent.
  bool independent_generators() const;
};

bool same_space(const BaseSpace& a, const BaseSpace& b, double rel_tol = 1e-12);

BaseSpace dual(const BaseSpace& X);

inline cplx pair(const Vec& f, const Vec& v) { return (f.array() * v.array()).sum(); }

double base_norm(const BaseSpace& X, const Vec& v);
double dual_norm(const BaseSpace& X, const Vec& f);
// f with dual_norm(f) <= 1 and <f, v> = base_norm(v)
Vec norming_functional(const BaseSpace& X, const Vec& v);

bool base_cone_member(const BaseSpace& X, const Vec& v, double tol);
Vec involution(const BaseSpace& X, const Vec& v);

Mat to_square(const BaseSpace& X, const Vec& v);
Vec from_square(const Mat& V);

LeveledElement adjoint(const BaseSpace& X, const LeveledElement& x);
bool is_hermitian_element(const BaseSpace& X, const LeveledElement& x, double tol);
LeveledElement hermitian_part(const BaseSpace& X, const LeveledElement& x);
Mat realign(const BaseSpace& X, const LeveledElement& x);
LeveledElement unrealign(const BaseSpace& X, const Mat& R, int n);

Vec random_cone_vector(const BaseSpace& X, Rng& rng);
Vec random_hermitian_vector(const BaseSpace& X, Rng& rng);

struct ScalarRegularityReport {
  double normality_lower_bound = 0.0;
  double generation_upper_bound = 0.0;
  // (x, y) with y >= +-x
  std::vector<std::pair<Vec, Vec>> normality_witnesses;
  std::vector<std::pair<Vec, Vec>> generation_witnesses;
  std::string variant = "strong";
  int budget = 0;
  std::uint64_t seed = 0;
};

// Hermitian inputs only; see the README for the variant reported.
ScalarRegularityReport scalar_regularity(const BaseSpace& X, int budget, std::uint64_t seed);

}  // namespace matord
