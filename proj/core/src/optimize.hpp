#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace matord::detail {

struct SimplexResult {
  std::vector<double> x;
  double value;
  int iterations;
};

// Derivative-free minimisation (GSL nmsimplex2); stops early once the best
// value drops to `stop_at`.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, int max_iter,
                          double size_tol = 1e-12,
                          double stop_at = -std::numeric_limits<double>::infinity());

}  // namespace matord::detail
