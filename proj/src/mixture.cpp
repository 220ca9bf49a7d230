#include "betakde/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "betakde/normal.hpp"

namespace betakde {

NormalMixture::NormalMixture(double mu_, double sigma_)
    : mu(mu_), sigma(sigma_) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("NormalMixture: sigma must be > 0");
  }
}

double NormalMixture::pdf(double x) const {
  return weight * normal_pdf(x) + (1.0 - weight) * normal_pdf(x, mu, sigma);
}

double NormalMixture::cdf(double x) const {
  return weight * normal_cdf(x) + (1.0 - weight) * normal_cdf(x, mu, sigma);
}

double NormalMixture::fourth_derivative(double x) const {
  return weight * normal_fourth_derivative(x) +
         (1.0 - weight) * normal_fourth_derivative(x, mu, sigma);
}

double NormalMixture::mean() const { return (1.0 - weight) * mu; }

double NormalMixture::sd() const {
  const double m = mean();
  const double second_moment =
      weight * 1.0 + (1.0 - weight) * (sigma * sigma + mu * mu);
  return std::sqrt(second_moment - m * m);
}

double NormalMixture::draw(rng::Stream& stream) const {
  if (stream.uniform() < weight) return stream.normal();
  return mu + sigma * stream.normal();
}

TargetDensity NormalMixture::target() const {
  TargetDensity t;
  const NormalMixture mix = *this;
  t.pdf = [mix](double x) { return mix.pdf(x); };
  t.fourth_derivative = [mix](double x) { return mix.fourth_derivative(x); };
  const double smax = std::max(1.0, mix.sigma);
  t.hint_lo = std::min(0.0, mix.mu) - 8.0 * smax;
  t.hint_hi = std::max(0.0, mix.mu) + 8.0 * smax;
  t.sampler = [mix](rng::Stream& stream) { return mix.draw(stream); };
  return t;
}

Sample sample_mixture(const NormalMixture& mix, int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_mixture: n must be >= 2");
  rng::Stream stream(seed);
  std::vector<double> draws(n);
  for (int i = 0; i < n; ++i) draws[i] = mix.draw(stream);
  return Sample(std::move(draws));
}

}  // namespace betakde
