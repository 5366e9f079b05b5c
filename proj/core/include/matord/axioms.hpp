#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matord/structures.hpp"

namespace matord {

struct AxiomReport {
  std::string name;
  int trials = 0;
  int violations = 0;
  int undecided = 0;
  // largest relative excess over the allowed side of the inequality
  double worst_excess = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return violations == 0; }
  void fail(const std::string& what);
};

struct RuanReport {
  AxiomReport compression;
  AxiomReport direct_sum;
  std::uint64_t seed = 0;
  bool passed() const { return compression.passed() && direct_sum.passed(); }
};

// Bracketed norms are checked in the relaxed form lower(lhs) <= upper(rhs).
RuanReport ruan_check(const MatricialStructure& S, int budget, std::uint64_t seed,
                      int max_level = 2, double rel_tol = 1e-9);

struct ConeAxiomReport {
  AxiomReport compression;
  AxiomReport direct_sum;
  AxiomReport addition;
  AxiomReport scaling;
  AxiomReport hermitian;
  AxiomReport pointedness;
  std::uint64_t seed = 0;
  bool passed() const {
    return compression.passed() && direct_sum.passed() && addition.passed() && scaling.passed() &&
           hermitian.passed() && pointedness.passed();
  }
};

ConeAxiomReport cone_axiom_check(const MatricialStructure& S, int budget, std::uint64_t seed,
                                 int level = 2, double tol = 1e-8);

}  // namespace matord
