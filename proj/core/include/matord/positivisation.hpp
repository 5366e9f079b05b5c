#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "matord/axioms.hpp"
#include "matord/regularity.hpp"

namespace matord {

struct PositivisationResult {
  double value_upper = 0.0;  // best completion found
  double value_lower = 0.0;  // dual pairing bound
  BlockWitness completion;
  std::string method;
  int budget = 0;
  std::uint64_t seed = 0;
};

// inf { max(alpha(x1), alpha(x2)) : [[x1, x], [x^*, x2]] positive }.
// `inner` replaces alpha on the diagonal blocks; the dual bound is then
// skipped (value_lower = 0). Throws Infeasible.
PositivisationResult alpha_plus(const MatricialStructure& S, const LeveledElement& x, int budget,
                                std::uint64_t seed,
                                const std::optional<NormEvaluator>& inner = std::nullopt);

// Evaluator returning [value_lower, value_upper] of alpha_plus.
NormEvaluator alpha_plus_evaluator(const MatricialStructure& S, int budget, std::uint64_t seed);

struct AlphaPlusProperties {
  AxiomReport ruan_compression;
  AxiomReport ruan_direct_sum;
  AxiomReport regularity;
  AxiomReport seminorm;
  AxiomReport idempotence;
  double idempotence_gap = 0.0;  // max relative difference of the two passes
  bool passed() const {
    return ruan_compression.passed() && ruan_direct_sum.passed() && regularity.passed() &&
           seminorm.passed() && idempotence.passed();
  }
};

AlphaPlusProperties alpha_plus_properties(const MatricialStructure& S, int level, int budget,
                                          std::uint64_t seed, double tol = 5e-3);

struct RenormReport {
  double c_generation = 1.0;
  double c_normality = 1.0;
  int samples = 0;
  int upper_violations = 0;  // alpha+ > C_g alpha
  int lower_violations = 0;  // alpha+ < alpha / C_n
  double worst_upper_ratio = 0.0;
  double worst_lower_ratio = kInf;
  bool passed() const { return upper_violations == 0 && lower_violations == 0; }
};

RenormReport renorm_bounds_check(const MatricialStructure& S, int level, int budget,
                                 std::uint64_t seed, double c_generation, double c_normality,
                                 double tol = 1e-3);

}  // namespace matord
