#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matord/structures.hpp"

namespace matord {

// <<x_flat, x>> with entry ((i,k),(j,l)) = <x_flat_kl, x_ij>, row index i*n+k
// where n = level(x_flat).
Mat pairing(const LeveledElement& x_flat, const LeveledElement& x);

// MIN <-> MAX over the dual base; SCHATTEN p -> SCHATTEN q; MATRIX_SYSTEM ->
// SCHATTEN 1. The scale is inverted.
MatricialStructure dual_structure(const MatricialStructure& S);

// Exact routes: MIN/MAX through the dual structure's cone test, Schatten
// kinds through positivity of the realigned dual element.
ConeVerdict dual_cone_member(const MatricialStructure& S, const LeveledElement& x_flat,
                             double tol = 1e-9);

// Falsification by pairing with `samples` primal cone members at the same
// level: NonMember with the offending pairing eigenvalue, otherwise Undecided.
ConeVerdict dual_cone_sampled(const MatricialStructure& S, const LeveledElement& x_flat,
                              int samples, std::uint64_t seed, double tol = 1e-9);

struct ProductsReport {
  int trials = 0;
  int failures = 0;
  double worst_min_eig = 0.0;  // relative to the trace norm of the block
  bool passed(double tol = 1e-8) const { return failures == 0 && worst_min_eig >= -tol; }
};

// [[<<u1, u1_flat>>, <<u, u_flat>>], [., <<u2, u2_flat>>]] for block-positive
// primal and dual triples over Schatten and lattice bases.
ProductsReport products_check(int budget, std::uint64_t seed, double tol = 1e-8);
// The assembled block for one pair of level-2 block elements.
Mat products_block(const LeveledElement& primal_block, const LeveledElement& dual_block);

struct GenNormalDualityReport {
  double constant = 1.0;
  double dual_normality_bound = 0.0;
  double dual_generation_bound = 0.0;  // sup witness value / upper(alpha)
  bool primal_exact = false;
  bool dual_exact = false;
  int samples = 0;
  bool normality_ok = false;
  bool generation_ok = false;
  LeveledElement worst_x;
  bool passed() const { return normality_ok && generation_ok; }
};

GenNormalDualityReport gen_normal_duality_probe(const MatricialStructure& S, int n, int budget,
                                                std::uint64_t seed, double constant = 1.0,
                                                double tol = 1e-6);

// True when level norms of the structure are computed exactly.
bool exact_norms(const MatricialStructure& S);

}  // namespace matord
