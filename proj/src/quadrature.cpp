#include "betakde/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "betakde/normal.hpp"

namespace betakde {

QuadratureSpec::QuadratureSpec(double lo_, double hi_, int intervals_)
    : lo(lo_), hi(hi_), intervals(intervals_) {
  if (!(lo < hi)) {
    throw std::invalid_argument("QuadratureSpec: lo must be < hi");
  }
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument(
        "QuadratureSpec: intervals must be an even integer >= 2");
  }
}

namespace detail {
void throw_nonfinite(double x) {
  std::ostringstream msg;
  msg << "integration error: integrand is non-finite at x = " << x;
  throw std::runtime_error(msg.str());
}
}  // namespace detail

double simpson(const std::function<double(double)>& f,
               const QuadratureSpec& spec) {
  return simpson<const std::function<double(double)>&>(f, spec);
}

BetaFunctionals beta_functionals(const std::function<double(double)>& pdf,
                                 const std::function<double(double)>& f4,
                                 double lo, double hi, double beta,
                                 int intervals) {
  if (!(beta > 1.0)) {
    throw std::invalid_argument("beta_functionals: beta must exceed 1");
  }
  // f^{beta-1} has heavier effective tails than f when beta < 2; widen the
  // range about its midpoint to compensate.
  const double widen = beta < 2.0 ? 1.0 / std::sqrt(beta - 1.0) : 1.0;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo) * widen;
  const QuadratureSpec spec(mid - half, mid + half, intervals);

  constexpr double kFloor = 1e-300;
  long clipped_nodes = 0;

  auto i1_integrand = [&](double x) {
    double f = pdf(x);
    if (f < kFloor) {
      ++clipped_nodes;
      f = kFloor;
    }
    return std::pow(f, beta - 1.0);
  };
  auto i2_integrand = [&](double x) {
    double f = pdf(x);
    if (f < kFloor) f = kFloor;
    const double d = f4(x);
    return std::pow(f, beta - 2.0) * d * d;
  };

  BetaFunctionals out{};
  out.i1 = simpson(i1_integrand, spec);
  out.i2 = simpson(i2_integrand, spec);
  // Upper bound on the floored region's contribution to i1 (Simpson node
  // weights are at most 4/3 step).
  const double step = (spec.hi - spec.lo) / spec.intervals;
  const double clipped_mass = static_cast<double>(clipped_nodes) * step *
                              (4.0 / 3.0) * std::pow(kFloor, beta - 1.0);
  if (clipped_mass > 1e-10 * out.i1) {
    throw std::runtime_error(
        "beta_functionals: floored density region contributes more than "
        "1e-10 of the relative mass; shrink the range or raise beta");
  }
  return out;
}

BetaFunctionals gaussian_functional_oracle(double mean, double sd,
                                           double beta) {
  if (!(sd > 0.0)) {
    throw std::invalid_argument("gaussian_functional_oracle: sd must be > 0");
  }
  if (!(beta > 1.0)) {
    throw std::invalid_argument(
        "gaussian_functional_oracle: beta must exceed 1");
  }
  auto pdf = [mean, sd](double x) { return normal_pdf(x, mean, sd); };
  auto f4 = [mean, sd](double x) {
    return normal_fourth_derivative(x, mean, sd);
  };
  return beta_functionals(pdf, f4, mean - 10.0 * sd, mean + 10.0 * sd, beta);
}

}  // namespace betakde
