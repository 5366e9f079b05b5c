#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "matord/base_space.hpp"

namespace matord {

enum class Kind { Min, Max, Schatten, MatrixSystem };

const char* kind_name(Kind kind);
Kind parse_kind(const std::string& name);

struct OptimizerConfig {
  int restarts = 32;
  int iterations = 500;
  std::uint64_t seed = kDefaultSeed;
  double psd_tol = kDefaultPsdTol;
};

// A matricial structure (alpha_n, S_oo^n(X)^+) on a base space.
//
// SCHATTEN uses the base exponent p; MATRIX_SYSTEM needs a Schatten base
// with p = inf. CUSTOM bases admit only MIN and MAX. `scale` multiplies every
// level norm and leaves the cones unchanged.
class MatricialStructure {
 public:
  MatricialStructure(BaseSpace base, Kind kind, OptimizerConfig config = {}, double scale = 1.0);

  const BaseSpace& base() const { return base_; }
  Kind kind() const { return kind_; }
  const OptimizerConfig& config() const { return config_; }
  double scale() const { return scale_; }

  MatricialStructure with_config(OptimizerConfig config) const;
  MatricialStructure scaled(double factor) const;

 private:
  BaseSpace base_;
  Kind kind_;
  OptimizerConfig config_;
  double scale_;
};

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;

  bool exact() const { return lower == upper; }
  double gap() const { return upper - lower; }
};

enum class Verdict { Member, NonMember, Undecided };

const char* verdict_name(Verdict v);

// Non-membership: the positive functional (f, xi) or positive map T with
// T(e_k) = map[k] whose evaluation on x has the negative value `value`.
// Membership: coefficients A_k with x = sum_k A_k (x) g_k, when available.
struct ConeCertificate {
  std::string type = "none";
  std::vector<Mat> coefficients;
  Vec functional;
  Vec vector;
  std::vector<Mat> map;
  double value = 0.0;
  std::string note;
};

struct ConeVerdict {
  Verdict verdict = Verdict::Undecided;
  double tol = kDefaultPsdTol;
  std::string method;
  ConeCertificate certificate;

  bool member() const { return verdict == Verdict::Member; }
  bool non_member() const { return verdict == Verdict::NonMember; }
};

using NormEvaluator = std::function<NormBracket(const LeveledElement&)>;

NormBracket level_norm(const MatricialStructure& S, const LeveledElement& x);
NormEvaluator norm_evaluator(const MatricialStructure& S);

NormBracket min_level_norm(const MatricialStructure& S, const LeveledElement& x);
NormBracket max_level_norm(const MatricialStructure& S, const LeveledElement& x);
NormBracket schatten_level_norm(const MatricialStructure& S, const LeveledElement& x);

// Certified upper bound for MIN over a weighted l_1 lattice (or l_1 custom
// norm) from a phase grid with `grid` points per angle and a Lipschitz margin.
double min_l1_grid_upper(const MatricialStructure& S, const LeveledElement& x, int grid);

// Lower bound for the S_oo^n[S_p^m] norm of the realigned matrix R, by
// maximising ||(a (x) I) R (b (x) I)||_p over ||a||_2p, ||b||_2p <= 1.
struct SchattenOptimum {
  double value = 0.0;
  Mat a;
  Mat b;
};
SchattenOptimum schatten_norm_ascent(const Mat& R, int n, int m, double p,
                                     const OptimizerConfig& config);
// ||x||_{S_oo^n[S_1^m]} <= ||sum A_r A_r^*||^{1/2} ||sum B_r^* B_r||^{1/2} from an SVD
double schatten1_factorization_upper(const Mat& R, int n, int m);

ConeVerdict cone_member(const MatricialStructure& S, const LeveledElement& x, double tol);
ConeVerdict min_cone_member(const MatricialStructure& S, const LeveledElement& x, double tol);
ConeVerdict max_cone_member(const MatricialStructure& S, const LeveledElement& x, double tol);
ConeVerdict schatten_cone_member(const MatricialStructure& S, const LeveledElement& x, double tol);

// min eigenvalue of (I (x) T)(x) = sum_k X_k (x) T(e_k)
double map_evaluation_min_eig(const LeveledElement& x, const std::vector<Mat>& images);

// Samplers. Cone samples are members by construction.
LeveledElement random_element(const BaseSpace& X, int n, Rng& rng);
LeveledElement random_hermitian_element(const BaseSpace& X, int n, Rng& rng);
LeveledElement random_cone_element(const MatricialStructure& S, int n, Rng& rng);
// sum_ij E_ij (x) E_ij and sum_i E_ii (x) E_ii over S^m, at level m
LeveledElement identity_pattern(int m);
LeveledElement diagonal_pattern(int m);
// sum_ij E_ij (x) E_ji
LeveledElement flip_element(int m);

}  // namespace matord
