#pragma once

#include <functional>

namespace betakde {

//! Symmetric probability kernel together with the analytic constants that
//! appear in the bandwidth formulas.  Immutable value object; safe for
//! concurrent shared use.
struct Kernel {
  std::function<double(double)> evaluate;           // K(u)
  std::function<double(double)> second_derivative;  // K''(u)
  //! Fused evaluation of K(u) and K''(u); hot loops use this to share the
  //! expensive part of the computation between the two.
  std::function<void(double u, double& k, double& kpp)> evaluate_pair;
  double mu2 = 0.0;             // int t^2 K(t) dt
  double mu4 = 0.0;             // int t^4 K(t) dt
  double roughness = 0.0;       // R(K) = int K(t)^2 dt
  double support_radius = 0.0;  // half-width beyond which K is treated as 0
};

//! Standard normal kernel: mu2 = 1, mu4 = 3, R(K) = (4 pi)^{-1/2},
//! K''(u) = (u^2 - 1) K(u).  support_radius = 8: evaluation loops skip
//! points with |u| > 8, where K < 2e-15.
Kernel gaussian_kernel();

}  // namespace betakde
