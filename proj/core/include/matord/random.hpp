#pragma once

#include <cstdint>
#include <random>

#include "matord/linalg.hpp"

namespace matord {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

double uniform01(Rng& rng);
double normal01(Rng& rng);
cplx complex_normal(Rng& rng);
Mat random_complex(Rng& rng, int rows, int cols);
Mat random_real(Rng& rng, int rows, int cols);
Vec random_unit_vector(Rng& rng, int n);
Mat random_hermitian(Rng& rng, int n);
// G G* with G of the given rank (rank <= 0 means full)
Mat random_psd(Rng& rng, int n, int rank = 0);
Mat random_unitary(Rng& rng, int n);
Mat random_orthogonal(Rng& rng, int n);
// Random contraction with operator norm exactly 1 (or 0 for empty sizes).
Mat random_contraction(Rng& rng, int rows, int cols);

}  // namespace matord
