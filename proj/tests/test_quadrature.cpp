#include <cmath>

#include "doctest.h"
#include "koblab/errors.hpp"
#include "koblab/quadrature.hpp"
#include "koblab/rootfind.hpp"

using namespace koblab;

TEST_CASE("adaptive Simpson reproduces closed-form integrals") {
  auto q = adaptive_simpson([](double x) { return x * x; }, 0.0, 3.0);
  CHECK(q.value == doctest::Approx(9.0).epsilon(1e-12));

  q = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-10));

  q = adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-12);
  CHECK(q.value == doctest::Approx(1.0 - std::exp(-30.0)).epsilon(1e-10));
}

TEST_CASE("decaying-integrand driver handles exponential and power tails") {
  // integral_0^inf e^{-u/2} du = 2
  auto q = integrate_decaying([](double u) { return std::exp(-0.5 * u); });
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-9));

  // integral_0^inf u e^{-u/2} du = 4 (interior peak)
  q = integrate_decaying([](double u) { return u * std::exp(-0.5 * u); });
  CHECK(q.value == doctest::Approx(4.0).epsilon(1e-9));

  // integral_0^inf du/(3+u)^2 = 1/3 (slow power tail)
  q = integrate_decaying([](double u) { return 1.0 / std::pow(3.0 + u, 2.0); });
  CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

  // Non-decaying integrand must be rejected.
  CHECK_THROWS_AS(integrate_decaying([](double) { return 1.0; }), Error);
}

TEST_CASE("dyadic-to-zero driver integrates endpoint singularities") {
  // integral_0^d delta^{-1/2} d delta = 2 sqrt(d)
  auto q = integrate_dyadic_to_zero(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.25);
  CHECK(q.value == doctest::Approx(1.0).epsilon(1e-9));

  q = integrate_dyadic_to_zero([](double) { return 1.0; }, 1.0);
  CHECK(q.value == doctest::Approx(1.0).epsilon(1e-9));

  // 1/(x ln(e/x)) diverges at 0 like the harmonic series.
  CHECK_THROWS_AS(integrate_dyadic_to_zero(
                      [](double x) { return 1.0 / (x * std::log(M_E / x)); },
                      0.5),
                  Error);
}

TEST_CASE("bracketed root and monotone inversion") {
  const double r = bracketed_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  // g(t) = sqrt(t)/2, y = 1 -> t = 4.
  const double t = invert_increasing(
      [](double x) { return 0.5 * std::sqrt(x); }, 1.0, 1.0);
  CHECK(t == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      invert_increasing([](double x) { return std::log(x); }, 1e6, 2.0, 1e300),
      Error);
}
