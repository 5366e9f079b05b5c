#pragma once

#include "matord/structures.hpp"

namespace matord::detail {

struct PsdCheck {
  bool hermitian = true;
  bool psd = true;
  double min_eig = 0.0;
  Vec vector;
};

// Relative tests: hermiticity within tol * max|M|, PSD within tol * ||M||_1.
PsdCheck check_psd(const Mat& M, double tol);

void require_kind(const MatricialStructure& S, std::initializer_list<Kind> kinds, const char* op);
void require_element(const MatricialStructure& S, const LeveledElement& x);

// Top singular pair of M (unit vectors).
void top_singular(const Mat& M, double& sigma, Vec& left, Vec& right);

// sum_k f_k X_k
Mat functional_slice(const LeveledElement& x, const Vec& f);

// Upper bound for MAX norms from x = sum_r C_r (x) z_r with unit z_r.
double factorization_upper(const std::vector<Mat>& C, int gauge_iterations);

// x = sum_r a_r b_r (x) z_r with a_r = P_r^{1/2}, b_r = P_r^{-1/2} C_r, unit z_r;
// value = ||sum a_r a_r^*||^{1/2} ||sum b_r^* b_r||^{1/2}.
struct Factorization {
  std::vector<Mat> a;
  std::vector<Mat> b;
  std::vector<Vec> z;
  double value = kInf;
};
// Stops once the value reaches `target`.
Factorization best_factorization(const BaseSpace& X, const LeveledElement& x, int gauge_iterations,
                                 double target = 0.0);

}  // namespace matord::detail
