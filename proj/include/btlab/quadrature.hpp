#pragma once

#include <functional>

#include "btlab/common.hpp"

namespace btlab::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_depth = 40;
};

struct Result {
  double value = 0.0;
  double abserr = 0.0;
  long evals = 0;
  bool converged = false;
};

struct CResult {
  Cplx value = 0.0;
  double abserr = 0.0;
  long evals = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod 15(7) by interval bisection.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

CResult integrate_complex(const std::function<Cplx(double)>& f, double a, double b,
                          const Options& opt = {});

/// Same, but throws std::runtime_error when the tolerance is not reached.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const Options& opt = {});

Cplx integrate_complex_or_throw(const std::function<Cplx(double)>& f, double a, double b,
                                const Options& opt = {});

}  // namespace btlab::quad
