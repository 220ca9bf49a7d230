#pragma once

#include <cmath>

namespace betakde {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)

inline double normal_pdf(double x, double mean = 0.0, double sd = 1.0) {
  const double z = (x - mean) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

inline double normal_cdf(double x, double mean = 0.0, double sd = 1.0) {
  return 0.5 * std::erfc(-(x - mean) / (sd * 1.4142135623730950488));
}

//! Fourth derivative of the N(mean, sd^2) density:
//!   f''''(x) = pdf(x) (3 - 6 z^2 + z^4) / sd^4,  z = (x - mean)/sd.
inline double normal_fourth_derivative(double x, double mean = 0.0,
                                       double sd = 1.0) {
  const double z = (x - mean) / sd;
  const double z2 = z * z;
  const double sd2 = sd * sd;
  return normal_pdf(x, mean, sd) * (3.0 - (6.0 - z2) * z2) / (sd2 * sd2);
}

}  // namespace betakde
