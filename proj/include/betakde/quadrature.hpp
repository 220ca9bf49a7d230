#pragma once

#include <cmath>
#include <functional>

namespace betakde {

struct QuadratureSpec {
  double lo;
  double hi;
  int intervals;  // even panel count, >= 2

  QuadratureSpec(double lo, double hi, int intervals);
};

namespace detail {
[[noreturn]] void throw_nonfinite(double x);
}

//! Composite Simpson rule with deterministic node order.  Error is
//! O(step^4) for smooth integrands.  Throws std::runtime_error naming the
//! offending abscissa if the integrand is non-finite at a node.
template <class F>
double simpson(F&& f, const QuadratureSpec& spec) {
  const double step = (spec.hi - spec.lo) / spec.intervals;
  auto eval = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) detail::throw_nonfinite(x);
    return y;
  };
  double odd = 0.0;
  for (int i = 1; i < spec.intervals; i += 2) odd += eval(spec.lo + i * step);
  double even = 0.0;
  for (int i = 2; i < spec.intervals; i += 2) even += eval(spec.lo + i * step);
  return step / 3.0 * (eval(spec.lo) + eval(spec.hi) + 4.0 * odd + 2.0 * even);
}

double simpson(const std::function<double(double)>& f,
               const QuadratureSpec& spec);

//! The two target functionals of the optimal-bandwidth formula:
//! i1 = int f^{beta-1},  i2 = int f^{beta-2} (f'''')^2.
struct BetaFunctionals {
  double i1;
  double i2;
};

//! Computes i1 and i2 for the N(mean, sd^2) density by quadrature, using
//! the analytic fourth derivative.  beta must exceed 1.
//!
//! The integration range is mean +/- r*sd with r = max(10, 10/sqrt(beta-1)):
//! f^{beta-1} has effective scale sd/sqrt(beta-1), so a fixed 10-sd window
//! would truncate ~1e-3 of the integral at beta = 1.1.
BetaFunctionals gaussian_functional_oracle(double mean, double sd,
                                           double beta);

//! Generic version used for non-Gaussian targets: integrates the two
//! functionals of (pdf, fourth_derivative) over [lo, hi], widening the
//! interval about its midpoint by 1/sqrt(beta-1) when beta < 2.
//! The density is floored at 1e-300 before powering; if the floored region
//! carries more than 1e-10 of the relative mass of i1 an error is raised.
BetaFunctionals beta_functionals(const std::function<double(double)>& pdf,
                                 const std::function<double(double)>& f4,
                                 double lo, double hi, double beta,
                                 int intervals = 8192);

}  // namespace betakde
