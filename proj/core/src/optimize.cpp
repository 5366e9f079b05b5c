#include "optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>

namespace matord::detail {

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

double trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  std::vector<double> x(v->size);
  for (size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  double y = f(x);
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, double step, int max_iter,
                          double size_tol, double stop_at) {
  const size_t n = x0.size();
  if (n == 0) return {x0, f(x0), 0};
  gsl_set_error_handler_off();

  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &trampoline;
  fn.params = const_cast<Objective*>(&f);

  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (size_t i = 0; i < n; ++i) gsl_vector_set(x, i, x0[i]);
  gsl_vector_set_all(ss, step);

  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    double size = gsl_multimin_fminimizer_size(s);
    if (gsl_multimin_test_size(size, size_tol) == GSL_SUCCESS) break;
    if (s->fval <= stop_at) break;
  }

  SimplexResult out;
  out.x.resize(n);
  for (size_t i = 0; i < n; ++i) out.x[i] = gsl_vector_get(s->x, i);
  out.value = s->fval;
  out.iterations = iter;

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(x);
  gsl_vector_free(ss);
  return out;
}

}  // namespace matord::detail
