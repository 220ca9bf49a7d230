#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "betakde/normal.hpp"
#include "betakde/quadrature.hpp"

using namespace betakde;

namespace {

// Closed form of int f^{beta-1} for f = N(0, sd^2), derived by completing
// the square: sd^{-(beta-2)} (2 pi)^{-(beta-2)/2} (beta-1)^{-1/2}.
double i1_closed_form(double sd, double beta) {
  return std::pow(sd, -(beta - 2.0)) *
         std::pow(2.0 * M_PI, -0.5 * (beta - 2.0)) /
         std::sqrt(beta - 1.0);
}

}  // namespace

TEST_CASE("simpson is exact on quadratics with two intervals") {
  const QuadratureSpec spec(0.0, 1.0, 2);
  const double value = simpson([](double x) { return x * x; }, spec);
  CHECK(value == 1.0 / 3.0);  // Simpson integrates cubics exactly
}

TEST_CASE("simpson reproduces the standard normal mass") {
  const QuadratureSpec spec(-8.0, 8.0, 2048);
  const double mass = simpson([](double x) { return normal_pdf(x); }, spec);
  CHECK(std::abs(mass - 1.0) < 1e-12);  // mass beyond 8 sigma < 1.3e-15
}

TEST_CASE("simpson reproduces the gaussian squared-density integral") {
  const QuadratureSpec spec(-8.0, 8.0, 2048);
  const double value = simpson(
      [](double x) { return normal_pdf(x) * normal_pdf(x); }, spec);
  CHECK(std::abs(value - 1.0 / std::sqrt(4.0 * M_PI)) < 1e-10);
}

TEST_CASE("simpson reports the abscissa of a non-finite integrand") {
  const QuadratureSpec spec(0.0, 2.0, 4);
  auto bad = [](double x) { return x == 1.0 ? 1.0 / 0.0 : x; };
  CHECK_THROWS_WITH_AS(simpson(bad, spec),
                       doctest::Contains("x = 1"), std::runtime_error);
}

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS(QuadratureSpec(1.0, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("doubling intervals leaves smooth results unchanged to 1e-10") {
  auto integrand = [](double x) { return std::exp(-x * x) * std::cos(x); };
  const double a = simpson(integrand, QuadratureSpec(-6.0, 6.0, 2048));
  const double b = simpson(integrand, QuadratureSpec(-6.0, 6.0, 4096));
  CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("gaussian functional oracle: i1 closed form") {
  for (double beta : {1.1, 1.5, 1.9, 2.0}) {
    for (double sd : {0.5, 1.0, 2.0}) {
      const auto fn = gaussian_functional_oracle(0.0, sd, beta);
      const double expected = i1_closed_form(sd, beta);
      CHECK(std::abs(fn.i1 - expected) < 1e-8 * expected);
    }
  }
}

TEST_CASE("gaussian functional oracle: i2 at beta = 2 is R(f'''')") {
  // R(f'''') for the standard normal: 105/(32 sqrt(pi)), obtained from
  // int e^{-z^2} z^{2k} dz moments of the squared fourth derivative.
  const auto fn = gaussian_functional_oracle(0.0, 1.0, 2.0);
  const double expected = 105.0 / (32.0 * std::sqrt(M_PI));
  CHECK(std::abs(fn.i2 - expected) < 1e-8 * expected);
  CHECK(std::abs(fn.i1 - 1.0) < 1e-10);
}

TEST_CASE("gaussian functional oracle: i2 scales as sd^-(beta+7)") {
  for (double beta : {1.1, 1.5, 1.9, 2.0}) {
    const double base = gaussian_functional_oracle(0.0, 1.0, beta).i2;
    for (double sd : {0.5, 2.0}) {
      const double scaled = gaussian_functional_oracle(0.0, sd, beta).i2;
      const double expected = std::pow(sd, -(beta + 7.0)) * base;
      CHECK(std::abs(scaled - expected) < 1e-6 * expected);
    }
  }
}

TEST_CASE("gaussian functional oracle is translation invariant") {
  for (double beta : {1.1, 2.0}) {
    const auto at0 = gaussian_functional_oracle(0.0, 1.0, beta);
    const auto at3 = gaussian_functional_oracle(3.0, 1.0, beta);
    CHECK(std::abs(at0.i1 - at3.i1) < 1e-10 * at0.i1);
    CHECK(std::abs(at0.i2 - at3.i2) < 1e-10 * at0.i2);
  }
}

TEST_CASE("gaussian functional oracle rejects bad parameters") {
  CHECK_THROWS_AS(gaussian_functional_oracle(0.0, 0.0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(gaussian_functional_oracle(0.0, 1.0, 1.0),
                  std::invalid_argument);
}
