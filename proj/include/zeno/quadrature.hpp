#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_segments = 4000;
};

struct Result {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  int segments = 0;
};

using Integrand = std::function<std::complex<double>(double)>;

// Globally adaptive Gauss-Kronrod (G7,K15) integration of a complex-valued
// integrand over [a, b]. Worst-error-first bisection until
// err <= max(abs_tol, rel_tol * |I|). `breakpoints` seed the initial
// subdivision (values outside (a, b) are ignored); useful when the integrand
// has a known boundary layer. Throws QuadratureError when the segment budget
// is exhausted before the tolerance is met.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {},
                 const std::vector<double>& breakpoints = {});

// sin(x)/x with a series branch for small |x|.
double sinc(double x);

}  // namespace zeno::quad
