#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matord/structures.hpp"

namespace matord {

// Lower bound on the MIN generation constant of a lattice from
// u = sum_i U_i (x) e_i / sqrt(n) at level N, where the U_i are real symmetric
// orthogonal and pairwise trace-orthogonal.
struct AmObstructionReport {
  int n = 0;
  int N = 0;
  std::vector<Mat> family;
  double anticommutator_sum = 0.0;  // sum_{i<j} ||U_i U_j + U_j U_i||
  double factorization_upper = 0.0; // 2 w_max sqrt((n + anticommutator_sum) / n)
  double u_norm_upper = 0.0;        // certified alpha_N(u) <= this
  double sum_norm = 0.0;            // ||sum_i e_i / sqrt(n)||
  double bound = 0.0;               // sum_norm / u_norm_upper
  std::string averaging;
  double margin = 0.0;
  int samples = 0;
  int dominating = 0;  // samples with a >= +-u
  int expectation_ok = 0;
  int norm_ok = 0;
  double worst_slack = 0.0;  // min_k E<xi|a_k|xi> - 1/sqrt(n) over samples
  int budget = 0;
  std::uint64_t seed = 0;

  bool passed() const;
};

// Signed-permutation search minimising the anticommutator sum; throws
// MatrixFamilyNotFound.
std::vector<Mat> symmetric_orthogonal_family(int n, int N, std::uint64_t seed);

AmObstructionReport am_obstruction(const BaseSpace& X, int n, int N, int budget,
                                   std::uint64_t seed);

}  // namespace matord
