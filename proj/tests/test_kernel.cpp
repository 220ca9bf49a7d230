#include <doctest.h>

#include <cmath>

#include "betakde/kernel.hpp"
#include "betakde/normal.hpp"
#include "betakde/quadrature.hpp"

using namespace betakde;

TEST_CASE("gaussian kernel constants") {
  const Kernel k = gaussian_kernel();
  CHECK(k.mu2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.mu4 == doctest::Approx(3.0).epsilon(1e-14));
  // (4 pi)^{-1/2}
  CHECK(k.roughness ==
        doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-14));
  CHECK(k.support_radius == 8.0);
}

TEST_CASE("gaussian kernel second derivative closed form") {
  const Kernel k = gaussian_kernel();
  CHECK(k.second_derivative(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(k.second_derivative(-1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(k.second_derivative(0.0) ==
        doctest::Approx(-kInvSqrt2Pi).epsilon(1e-14));
}

TEST_CASE("stored constants agree with quadrature of evaluate") {
  const Kernel k = gaussian_kernel();
  const QuadratureSpec spec(-k.support_radius, k.support_radius, 4096);
  const double mass = simpson([&](double u) { return k.evaluate(u); }, spec);
  const double mu2 =
      simpson([&](double u) { return u * u * k.evaluate(u); }, spec);
  const double mu4 = simpson(
      [&](double u) { return u * u * u * u * k.evaluate(u); }, spec);
  const double rough = simpson(
      [&](double u) { return k.evaluate(u) * k.evaluate(u); }, spec);
  CHECK(std::abs(mass - 1.0) < 1e-8);
  CHECK(std::abs(mu2 - k.mu2) < 1e-8);
  CHECK(std::abs(mu4 - k.mu4) < 1e-8);
  CHECK(std::abs(rough - k.roughness) < 1e-8);
}

TEST_CASE("kernel symmetry and nonnegativity") {
  const Kernel k = gaussian_kernel();
  for (int i = 0; i <= 100; ++i) {
    const double u = -5.0 + 0.1 * i;
    CHECK(k.evaluate(u) >= 0.0);
    CHECK(k.evaluate(u) == doctest::Approx(k.evaluate(-u)).epsilon(1e-15));
  }
}

TEST_CASE("second derivative matches a central finite difference") {
  const Kernel k = gaussian_kernel();
  const double step = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const double u = -4.0 + 8.0 * i / 99.0;
    const double fd = (k.evaluate(u + step) - 2.0 * k.evaluate(u) +
                       k.evaluate(u - step)) /
                      (step * step);
    CHECK(std::abs(fd - k.second_derivative(u)) < 1e-6);
  }
}

TEST_CASE("fused evaluation agrees with the separate functions") {
  const Kernel k = gaussian_kernel();
  for (double u : {-3.7, -1.0, 0.0, 0.25, 2.0, 6.5}) {
    double kv, kpp;
    k.evaluate_pair(u, kv, kpp);
    CHECK(kv == k.evaluate(u));
    CHECK(kpp == k.second_derivative(u));
  }
}
