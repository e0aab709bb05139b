#include <cmath>
#include <vector>

#include "doctest.h"
#include "koblab/errors.hpp"
#include "koblab/rates.hpp"

using namespace koblab;
using namespace koblab::rates;

// Closed forms used as oracles below, derived from the antiderivative
// integral_t^inf a^{-1-e} da = t^{-e}/e and the Gamma integral
// integral_0^inf u e^{-e u} du = e^{-2}:
//   f(t) = t^e      ->  g(t) = e t^e,   f_tilde(t) = e^2 t^e
//   f(t) = ln^2 t   ->  g(t) = ln t     (integral = 1/ln t)

TEST_CASE("g_of matches hand-derived antiderivatives") {
  const auto sqrt_f = RateFunction::power(0.5);
  CHECK(g_of(sqrt_f, 4.0) == doctest::Approx(1.0).epsilon(1e-8));

  const auto log2_f = RateFunction::log_power(2.0);
  CHECK(g_of(log2_f, std::exp(3.0)) == doctest::Approx(3.0).epsilon(1e-8));

  for (const double eps : {0.25, 0.5}) {
    const auto f = RateFunction::power(eps);
    for (double t = 2.0; t <= 1e6; t *= 14.0) {
      CHECK(g_of(f, t) ==
            doctest::Approx(eps * std::pow(t, eps)).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(g_of(sqrt_f, 0.5), Error);  // below domain floor
}

TEST_CASE("g_star closed-form inverses") {
  CHECK(g_star([](double t) { return 0.5 * std::sqrt(t); }, 1.0, 1.0) ==
        doctest::Approx(4.0).epsilon(1e-10));
  CHECK(g_star([](double t) { return t; }, 7.0, 1.0) ==
        doctest::Approx(7.0).epsilon(1e-10));
  CHECK(g_star([](double t) { return std::log(t); }, 3.0, 2.0) ==
        doctest::Approx(std::exp(3.0)).epsilon(1e-10));
}

TEST_CASE("G_of closed-form values") {
  // g = sqrt(t)/2, gamma = 0.1, delta = 0.2: g*(50) = 4*50^2, G = 1e-4.
  const auto g_sqrt = [](double t) { return 0.5 * std::sqrt(t); };
  CHECK(G_of(g_sqrt, 0.1, 0.2, 1.0) == doctest::Approx(1e-4).epsilon(1e-9));

  CHECK(G_of([](double t) { return t; }, 1.0, 0.5, 1e-6) ==
        doctest::Approx(0.5).epsilon(1e-9));

  // g = e t^e with e = 1/2, gamma = 1: G(delta) = (delta/2)^2.
  const auto g_pow = [](double t) { return 0.5 * std::pow(t, 0.5); };
  CHECK(G_of(g_pow, 1.0, 0.3, 1.0) ==
        doctest::Approx(0.09 / 4.0).epsilon(1e-9));
}

TEST_CASE("GFunction agrees with closed forms and identities") {
  // f = sqrt(t): G(delta) = gamma^2 delta^2 / 4.
  GFunction G(RateFunction::power(0.5), 0.1);
  CHECK(G(0.2) == doctest::Approx(0.1 * 0.1 * 0.04 / 4.0).epsilon(1e-8));
  CHECK(G(0.0) == 0.0);
  // Gdot = gamma^2 delta / 2, Gddot = gamma^2 / 2.
  CHECK(G.dot(0.2) == doctest::Approx(0.01 * 0.2 / 2.0).epsilon(1e-7));
  CHECK(G.ddot(0.2) == doctest::Approx(0.01 / 2.0).epsilon(1e-7));
  // Inverse round-trip.
  const double s = G(0.15);
  CHECK(G.inverse(s) == doctest::Approx(0.15).epsilon(1e-8));
}

TEST_CASE("claim residuals: analytic, equality, and quadrature-backed cases") {
  // f = sqrt(t), gamma = 0.1, delta = 0.2: Gdot/G = 2/delta = 10 and
  // gamma f(1/G) = 0.1 sqrt(1e4) = 10, so r1 vanishes analytically.
  auto r = claim_residuals(RateFunction::power(0.5), 0.1, 0.2);
  CHECK(r.r1 <= 1e-4);
  CHECK(r.r2 <= 1e-10);
  CHECK(r.r3 <= 1e-10);

  // f(t) = t: G linear, all three identities are equalities.
  for (const double delta : {0.01, 0.1, 0.5}) {
    r = claim_residuals(RateFunction::power(1.0), 1.0, delta, delta * 1e-3);
    CHECK(r.r1 <= 1e-10);
    CHECK(r.r2 <= 1e-10);
    CHECK(r.r3 <= 1e-10);
  }

  // Quadrature-defined G for the log-power family.
  r = claim_residuals(RateFunction::log_power(2.0), 0.05, 0.1);
  CHECK(r.r1 <= 1e-3);
  CHECK(r.r2 <= 1e-3);
  CHECK(r.r3 <= 1e-3);

  // Step too large relative to delta is rejected.
  CHECK_THROWS_AS(claim_residuals(RateFunction::power(0.5), 0.1, 0.01, 0.009),
                  Error);
}

TEST_CASE("f_tilde matches the Gamma-integral closed form") {
  const auto sqrt_f = RateFunction::power(0.5);
  CHECK(f_tilde(sqrt_f, 16.0) == doctest::Approx(1.0).epsilon(1e-8));

  for (const double eps : {0.25, 0.5}) {
    const auto f = RateFunction::power(eps);
    for (double t = 2.0; t <= 1e6; t *= 14.0) {
      CHECK(f_tilde(f, t) ==
            doctest::Approx(eps * eps * std::pow(t, eps)).epsilon(1e-6));
    }
  }

  // beta = 2 makes the log-weighted tail diverge (needs beta > 2).
  CHECK_THROWS_AS(f_tilde(RateFunction::log_power(2.0), std::exp(4.0)), Error);
}

TEST_CASE("holder rate h: closed chain and dual-path consistency") {
  const auto sqrt_f = RateFunction::power(0.5);
  // h = eta f_tilde(t^eta): f_tilde(4) = sqrt(4)/4 = 1/2, h = 1/4.
  CHECK(holder_rate_h(sqrt_f, 0.5, 16.0) == doctest::Approx(0.25).epsilon(1e-5));
  // eta = 1 collapses to f_tilde.
  CHECK(holder_rate_h(sqrt_f, 1.0, 16.0) == doctest::Approx(1.0).epsilon(1e-5));

  const auto f14 = RateFunction::power(0.25);
  CHECK(holder_rate_h(f14, 1.0, 100.0) ==
        doctest::Approx(0.0625 * std::pow(100.0, 0.25)).epsilon(1e-5));

  CHECK_THROWS_AS(holder_rate_h(RateFunction::log_power(2.0), 0.5, 100.0),
                  Error);
}

TEST_CASE("Hardy-Littlewood rate") {
  // G = sqrt(delta), d = 0.25: integral = 2 sqrt(d) = 1.
  CHECK(hl_rate([](double x) { return std::sqrt(x); }, 0.25) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(hl_rate([](double x) { return x; }, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-8));

  // G/delta increasing near d (d > 1) violates the precondition.
  CHECK_THROWS_WITH_AS(
      hl_rate([](double x) { return 1.0 / std::log(M_E / x); }, 2.0),
      doctest::Contains("increases"), Error);

  // Integrable-looking but log-divergent at 0.
  CHECK_THROWS_AS(
      hl_rate([](double x) { return 1.0 / std::log(M_E / x); }, 0.5), Error);
}

TEST_CASE("monotonicity, domination, and inversion round-trip invariants") {
  const std::vector<RateFunction> fams = {
      RateFunction::power(0.25), RateFunction::power(0.5),
      RateFunction::log_power(2.0), RateFunction::log_power(3.0)};
  for (const auto& f : fams) {
    double prev_g = 0.0;
    const double lo = std::max(2.0, f.domain_floor() * 1.5);
    for (double t = lo; t <= 1e6; t *= 3.5) {
      const double gv = g_of(f, t);
      CHECK(gv >= prev_g);        // monotone
      CHECK(gv <= f(t) * (1.0 + 1e-9));  // domination g <= f
      prev_g = gv;
    }
  }

  // |g_star(g(t)) - t| / t <= 1e-8 on a log grid.
  const auto f = RateFunction::power(0.5);
  const auto g_fun = [&](double t) { return g_of(f, t); };
  for (double t = 2.0; t <= 1e6; t *= 6.0) {
    const double back = g_star(g_fun, g_fun(t), 1.0);
    CHECK(std::abs(back - t) / t <= 1e-8);
  }
}

TEST_CASE("tabulated rate functions interpolate monotonically") {
  std::vector<std::pair<double, double>> samples;
  for (double t = 1.0; t <= 1024.0; t *= 2.0)
    samples.push_back({t, std::sqrt(t)});
  const auto f = RateFunction::tabulated(samples, 0.5);
  CHECK(f(4.0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(f(300.0) == doctest::Approx(std::sqrt(300.0)).epsilon(5e-3));
  // Power-law tail beyond the last sample.
  CHECK(f(4096.0) == doctest::Approx(64.0).epsilon(1e-6));
  // Monotone between nodes.
  double prev = 0.0;
  for (double t = 1.0; t <= 4096.0; t *= 1.07) {
    const double v = f(t);
    CHECK(v >= prev);
    prev = v;
  }
  // Quadrature g through the tabulated family stays close to the exact one.
  CHECK(g_of(f, 16.0) == doctest::Approx(0.5 * 4.0).epsilon(2e-2));

  CHECK_THROWS_AS(RateFunction::tabulated({{1.0, 2.0}, {2.0, 1.5}}, 0.5),
                  Error);  // non-monotone samples
}

TEST_CASE("cap flags are recorded, not enforced") {
  CHECK(RateFunction::power(0.5).cap_flags().le_sqrt_t);
  CHECK(RateFunction::power(1.0).cap_flags().le_t);
  CHECK_FALSE(RateFunction::power(1.0).cap_flags().le_sqrt_t);
  CHECK(RateFunction::log_power(2.0).cap_flags().le_sqrt_t);
}

TEST_CASE("transform table marks inapplicable cells") {
  const auto rows =
      transform_table(RateFunction::log_power(2.0), 1.0, 0.5, {10.0, 100.0});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].g > 0.0);
  CHECK(std::isnan(rows[0].f_tilde));  // beta = 2: weighted tail diverges
  CHECK(std::isnan(rows[0].h));
}
