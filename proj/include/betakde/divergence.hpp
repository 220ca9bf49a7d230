#pragma once

#include <functional>

#include "betakde/kernel.hpp"
#include "betakde/quadrature.hpp"
#include "betakde/rng.hpp"

namespace betakde {

//! Order parameter of the beta-divergence family.  The definitions divide
//! by beta - 1, so beta must exceed 1.
struct BetaParam {
  double value;
  explicit BetaParam(double beta);
};

//! Reference density with the analytic pieces the bandwidth formulas need.
//! sampler may be empty for targets that are only integrated against.
struct TargetDensity {
  std::function<double(double)> pdf;
  std::function<double(double)> fourth_derivative;
  double hint_lo = 0.0;  // quadrature range hint
  double hint_hi = 0.0;
  std::function<double(rng::Stream&)> sampler;
};

//! N(mean, sd^2) target with support hint mean +/- 10 sd.
TargetDensity normal_target(double mean, double sd);

//! i1 and i2 of a TargetDensity (see quadrature.hpp).
BetaFunctionals target_functionals(const TargetDensity& target, double beta,
                                   int intervals = 8192);

//! Beta-divergence of a nonnegative curve g from the target density f:
//!   (1/b) int g^b - (1/(b-1)) int g^{b-1} f + (1/(b(b-1))) int f^b.
//! All three terms share one set of quadrature nodes.
double beta_divergence(const std::function<double(double)>& g,
                       const TargetDensity& f, const BetaParam& beta,
                       const QuadratureSpec& spec);

//! Integrated squared error int (g - f)^2.
double ise(const std::function<double(double)>& g, const TargetDensity& f,
           const QuadratureSpec& spec);

//! Asymptotic expected beta-divergence of the bias-reduced estimator at
//! bandwidth h, sample size n:
//!   (1/2) [ (h^8/576) mu4^2 i2 + (1/(n h)) R(K) i1 ].
//! Strictly convex on h > 0; its minimizer is
//!   h* = { 72 R(K) i1 / (mu4^2 i2) }^{1/9} n^{-1/9}.
double asymptotic_expected_divergence(double h, long n, const Kernel& kernel,
                                      double i1, double i2);

}  // namespace betakde
