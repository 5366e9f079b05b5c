#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matord/structures.hpp"

namespace matord {

// (x1, x2) with [[x1, x], [x^*, x2]] in the level-2n cone.
struct BlockWitness {
  LeveledElement x1;
  LeveledElement x2;
  NormBracket norm1;
  NormBracket norm2;
  // max of the upper norms of x1 and x2
  double value = 0.0;
  std::string method;
};

LeveledElement witness_block(const BaseSpace& X, const BlockWitness& w, const LeveledElement& x);
// (x1 + x2) / 2, which dominates +-x when x is hermitian
LeveledElement symmetric_witness(const BlockWitness& w);

struct WitnessCheck {
  Verdict block = Verdict::Undecided;
  Verdict first = Verdict::Undecided;
  Verdict second = Verdict::Undecided;
  bool value_consistent = false;
  // no component is a certified non-member and the value matches
  bool ok() const;
};

WitnessCheck verify_witness(const MatricialStructure& S, const LeveledElement& x,
                            const BlockWitness& w, double tol = 1e-8);

// Closed-form witness where one is known, refined by local search otherwise.
BlockWitness generation_witness(const MatricialStructure& S, const LeveledElement& x,
                                double eps = 0.0);

struct NormalityProbe {
  // sup of lower(u) / max(upper(u1), upper(u2)) over the samples
  double bound = 0.0;
  LeveledElement u1, u, u2;
  // the same ratio restricted to designed pairs (a+b, a-b, a+b)
  double pair_bound = 0.0;
  int samples = 0;
};

NormalityProbe normality_probe(const MatricialStructure& S, int n, int budget, std::uint64_t seed);

struct RegularityReport {
  int level = 0;
  NormalityProbe normality;
  // sup over samples of witness value / lower(x)
  double generation_upper_bound = 0.0;
  LeveledElement worst_x;
  BlockWitness worst_witness;
  int budget = 0;
  std::uint64_t seed = 0;
  std::string variant = "strong (eps = 0)";
};

RegularityReport regularity_report(const MatricialStructure& S, int n, int budget,
                                   std::uint64_t seed);

struct MaxNiceDecomposition {
  std::vector<Vec> x;
  Vec xi;
  Vec eta;
  double residual = 0.0;
  double xi_sum_norm = 0.0;
  double eta_sum_norm = 0.0;
};

MaxNiceDecomposition max_nice_decompose(const BaseSpace& X, const Vec& v, double eps = 0.0);

struct MinNiceReport {
  int samples = 0;
  int admissible = 0;
  int norm_violations = 0;
  int planted_violators = 0;
  int rejected_violators = 0;
  bool passed() const { return norm_violations == 0 && rejected_violators == planted_violators; }
};

// t^2 x1 + s^2 x2 >= 2 t s Re(omega x) on a (t, s = 1/t, omega) grid per coordinate
bool min_nice_grid_holds(const Vec& x, const Vec& x1, const Vec& x2);
MinNiceReport min_nice_check(const BaseSpace& X, int budget, std::uint64_t seed);

struct CbcCbReport {
  double cbc_lower = 0.0;
  double cb_lower = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
  int levels = 0;
  int samples = 0;
  bool sandwich_holds = false;
};

// `map` is a dim(to) x dim(from) matrix acting on base coordinates.
// c1: normality constant of `to`; c2: generation constant of `from`.
CbcCbReport cbc_cb_compare(const MatricialStructure& from, const MatricialStructure& to,
                           const Mat& map, int n_max, int budget, std::uint64_t seed,
                           double c1 = 1.0, double c2 = 1.0, double tol = 1e-9);

LeveledElement apply_map(const Mat& map, const LeveledElement& x);

}  // namespace matord
