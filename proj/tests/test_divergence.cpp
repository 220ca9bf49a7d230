#include <doctest.h>

#include <cmath>
#include <vector>

#include "betakde/divergence.hpp"
#include "betakde/kernel.hpp"
#include "betakde/normal.hpp"
#include "betakde/optimize.hpp"
#include "betakde/quadrature.hpp"
#include "betakde/rng.hpp"

using namespace betakde;

namespace {

const QuadratureSpec wide_spec(-12.0, 12.0, 2048);

// Nonnegative random curve: a two-component normal mixture density.
std::function<double(double)> random_mixture_curve(rng::Stream& stream) {
  const double m1 = 2.0 * stream.uniform() - 1.0;
  const double m2 = 3.0 * stream.uniform() - 1.5;
  const double s1 = 0.5 + stream.uniform();
  const double s2 = 0.5 + stream.uniform();
  const double w = stream.uniform();
  return [=](double x) {
    return w * normal_pdf(x, m1, s1) + (1.0 - w) * normal_pdf(x, m2, s2);
  };
}

}  // namespace

TEST_CASE("beta divergence vanishes when the curve equals the target") {
  const TargetDensity f = normal_target(0.0, 1.0);
  for (double beta : {1.1, 1.5, 1.9, 2.0}) {
    const double d = beta_divergence(f.pdf, f, BetaParam(beta), wide_spec);
    CHECK(std::abs(d) < 1e-8);
  }
}

TEST_CASE("twice the beta=2 divergence is the integrated squared error") {
  rng::Stream stream(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_mixture_curve(stream);
    const TargetDensity f =
        normal_target(stream.uniform() - 0.5, 0.6 + stream.uniform());
    const double d2 = beta_divergence(g, f, BetaParam(2.0), wide_spec);
    const double i = ise(g, f, wide_spec);
    CHECK(std::abs(2.0 * d2 - i) < 1e-10);
  }
}

TEST_CASE("beta=2 divergence against the gaussian convolution identity") {
  // D2(phi, N(0.5,1)) = (1/2) int (phi(x) - phi(x-1/2))^2
  //                   = R(phi) - (2 sqrt(pi))^{-1} e^{-1/16}
  //                   = (4 pi)^{-1/2} (1 - e^{-1/16}).
  const TargetDensity f = normal_target(0.5, 1.0);
  auto g = [](double x) { return normal_pdf(x); };
  const double d2 = beta_divergence(g, f, BetaParam(2.0), wide_spec);
  const double expected =
      (1.0 - std::exp(-0.0625)) / std::sqrt(4.0 * M_PI);
  CHECK(std::abs(d2 - expected) < 1e-8);
}

TEST_CASE("ise basics") {
  const TargetDensity f = normal_target(0.0, 1.0);
  CHECK(std::abs(ise(f.pdf, f, wide_spec)) < 1e-12);

  auto g = [](double x) { return normal_pdf(x, 0.3, 1.2); };
  const double gf = ise(g, f, wide_spec);
  CHECK(gf >= 0.0);
  // symmetric in the two curves
  const TargetDensity f2 = normal_target(0.3, 1.2);
  auto g2 = [](double x) { return normal_pdf(x); };
  CHECK(gf == doctest::Approx(ise(g2, f2, wide_spec)).epsilon(1e-12));
  CHECK(2.0 * beta_divergence(g, f, BetaParam(2.0), wide_spec) ==
        doctest::Approx(gf).epsilon(1e-10));
}

TEST_CASE("beta divergence is nonnegative for nonnegative curves") {
  const Kernel k = gaussian_kernel();
  (void)k;
  rng::Stream stream(99);
  for (int trial = 0; trial < 9; ++trial) {
    const auto g = random_mixture_curve(stream);
    const TargetDensity f =
        normal_target(stream.uniform() - 0.5, 0.7 + 0.6 * stream.uniform());
    for (double beta : {1.1, 1.5, 2.0}) {
      CHECK(beta_divergence(g, f, BetaParam(beta), wide_spec) >= -1e-8);
    }
  }
}

TEST_CASE("asymptotic expected divergence: minimizer matches 72 formula") {
  const Kernel k = gaussian_kernel();
  rng::Stream stream(5);
  for (int trial = 0; trial < 9; ++trial) {
    const double i1 = 0.2 + 2.0 * stream.uniform();
    const double i2 = 0.3 + 4.0 * stream.uniform();
    const long n = 30 + static_cast<long>(stream.uniform() * 2000);
    auto objective = [&](double h) {
      return asymptotic_expected_divergence(h, n, k, i1, i2);
    };
    const double closed = std::pow(
        72.0 * k.roughness * i1 / (k.mu4 * k.mu4 * i2 * n), 1.0 / 9.0);
    const double found =
        golden_section_min(objective, closed / 50.0, closed * 50.0,
                           1e-10 * closed);
    CHECK(std::abs(found - closed) < 1e-6 * closed);
    // the defining identity of the minimizer
    const double coeff = std::pow(found, 9.0) * n * k.mu4 * k.mu4 * i2 /
                         (k.roughness * i1);
    CHECK(std::abs(coeff - 72.0) < 1e-5 * 72.0);
  }
}

TEST_CASE("asymptotic expected divergence is strictly convex in h") {
  const Kernel k = gaussian_kernel();
  const double i1 = 1.0, i2 = 1.8512;
  const long n = 400;
  const std::vector<double> hs = log_spaced(0.01, 10.0, 64);
  for (std::size_t i = 1; i + 1 < hs.size(); ++i) {
    // second difference on a log-spaced grid stays positive
    const double a = asymptotic_expected_divergence(hs[i - 1], n, k, i1, i2);
    const double b = asymptotic_expected_divergence(hs[i], n, k, i1, i2);
    const double c = asymptotic_expected_divergence(hs[i + 1], n, k, i1, i2);
    CHECK(a + c - 2.0 * b > 0.0);
  }
  // doubling h away from the minimizer increases the value
  const double h_star = std::pow(
      72.0 * k.roughness * i1 / (k.mu4 * k.mu4 * i2 * n), 1.0 / 9.0);
  CHECK(asymptotic_expected_divergence(2.0 * h_star, n, k, i1, i2) >
        asymptotic_expected_divergence(h_star, n, k, i1, i2));
}

TEST_CASE("asymptotic minimizer scales as n^{-1/9}") {
  const Kernel k = gaussian_kernel();
  const double i1 = 0.7, i2 = 2.3;
  auto h_star = [&](long n) {
    return std::pow(72.0 * k.roughness * i1 / (k.mu4 * k.mu4 * i2 * n),
                    1.0 / 9.0);
  };
  // multiplying n by 512 = 2^9 exactly halves the minimizer
  CHECK(h_star(512 * 40) == doctest::Approx(0.5 * h_star(40)).epsilon(1e-12));
}

TEST_CASE("beta param validation") {
  CHECK_THROWS_AS(BetaParam(1.0), std::invalid_argument);
  CHECK_THROWS_AS(BetaParam(0.5), std::invalid_argument);
  CHECK_NOTHROW(BetaParam(1.0001));
}
