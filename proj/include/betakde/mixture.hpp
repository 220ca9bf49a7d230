#pragma once

#include <cstdint>

#include "betakde/divergence.hpp"
#include "betakde/rng.hpp"
#include "betakde/sample.hpp"

namespace betakde {

//! Two-component normal mixture 0.5 N(0,1) + 0.5 N(mu, sigma^2), the
//! data-generating process of the simulation study.
struct NormalMixture {
  double mu;
  double sigma;
  double weight = 0.5;  // first-component weight

  NormalMixture(double mu, double sigma);

  double pdf(double x) const;
  double cdf(double x) const;
  double fourth_derivative(double x) const;
  double mean() const;
  double sd() const;

  //! Draw one observation: component choice, then a Gaussian draw.
  double draw(rng::Stream& stream) const;

  //! TargetDensity view with sampler and support hint
  //! [min(0, mu) - 8 max(1, sigma), max(0, mu) + 8 max(1, sigma)].
  TargetDensity target() const;
};

//! n i.i.d. draws, deterministic per seed, returned sorted.
Sample sample_mixture(const NormalMixture& mix, int n, std::uint64_t seed);

}  // namespace betakde
