#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace koblab::rates {

enum class Family { Power, LogPower, Tabulated };

/// A named monotone growth function f on [t0, inf), f >= 1 there.
///
/// Families:
///   Power(eps):     f(t) = t^eps, eps > 0           (finite-type rates)
///   LogPower(beta): f(t) = (ln t)^beta, beta > 1    (infinite-type rates)
///   Tabulated:      monotone piecewise-cubic through samples with a declared
///                   power-law tail beyond the last sample (integrals need a
///                   defined tail)
///
/// Huge arguments are routine downstream (1/G can overflow a double), so the
/// stable entry point is eval_log(ln t).
class RateFunction {
 public:
  static RateFunction power(double epsilon, double t0 = 1.0);
  static RateFunction log_power(double beta, double t0 = 2.718281828459045);
  static RateFunction tabulated(std::vector<std::pair<double, double>> samples,
                                double tail_exponent);

  double operator()(double t) const;

  /// f(e^log_t); exact for Power/LogPower at any representable log_t.
  double eval_log(double log_t) const;

  /// t * f'(t) evaluated stably from ln t (used by the G-derivative identity).
  double derivative_times_t_log(double log_t) const;

  double domain_floor() const { return t0_; }
  Family family() const { return family_; }
  double param() const;  // epsilon or beta

  /// Tail test for integral of da / (a f(a)): Power always, LogPower needs
  /// beta > 1, Tabulated needs a positive declared tail exponent.
  bool tail_integrable() const;

  /// Tail test with the extra logarithmic weight (ln a - ln t); stricter:
  /// LogPower needs beta > 2.
  bool weighted_tail_integrable() const;

  /// Which standing caps the function satisfies over [t0, t_hi], sampled.
  /// Recorded for reports; neither cap is enforced.
  struct CapFlags {
    bool le_sqrt_t = false;
    bool le_t = false;
  };
  CapFlags cap_flags(double t_hi = 1e6) const;

  std::string describe() const;

 private:
  RateFunction() = default;

  Family family_ = Family::Power;
  double eps_ = 0.0;
  double beta_ = 0.0;
  double t0_ = 1.0;
  // Tabulated: monotone cubic in log-log coordinates plus linear tail.
  std::vector<double> lx_, ly_, slope_;
  double tail_exp_ = 0.0;
};

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

/// g(t) = (integral_t^inf da / (a f(a)))^{-1}, adaptive quadrature after the
/// substitution a = t e^u. Throws "divergent-integral" when the tail test
/// fails and "domain-error" for t <= t0.
double g_of(const RateFunction& f, double t, double rel_tol = 1e-9);

/// Same with both sides in logs: returns g(e^{log_t}).
double g_of_log(const RateFunction& f, double log_t, double rel_tol = 1e-9);

/// Inverse of an increasing evaluable g: returns t with g(t) = y.
double g_star(const std::function<double(double)>& g, double y, double t_floor,
              double t_cap = 1e300);

/// G(delta) = 1 / g_star((gamma delta)^{-1}).
double G_of(const std::function<double(double)>& g, double gamma, double delta,
            double t_floor, double t_cap = 1e300);

/// f_tilde(t) = (integral_t^inf (ln a - ln t) da / (a f(a)))^{-1}; requires
/// the weighted tail test.
double f_tilde(const RateFunction& f, double t, double rel_tol = 1e-9);

/// The calibrated transform G(delta) = 1/g*((gamma delta)^{-1}) together with
/// its derivative identities
///   Gdot   = gamma G f(1/G)
///   Gddot  = gamma Gdot [ f(1/G) - (t f'(t))|_{t=1/G} / G ]
/// and the inverse G*(s) = 1/(gamma g(1/s)). All internal work happens on
/// ln G, so log-power families with sub-representable G values stay usable
/// through log_value().
class GFunction {
 public:
  GFunction(RateFunction f, double gamma, double rel_tol = 1e-9,
            double t_cap = 1e300);

  double gamma() const { return gamma_; }
  const RateFunction& f() const { return f_; }

  double g(double t) const;
  double g_log(double log_t) const;  // g(e^{log_t})

  /// ln g_star(y): the log of the inversion solution.
  double log_g_star(double y) const;

  double operator()(double delta) const;  // G, with G(0) = 0
  double log_value(double delta) const;   // ln G(delta)
  double dot(double delta) const;
  double ddot(double delta) const;
  double inverse(double s) const;  // G*(s)

  /// Largest usable delta: (gamma delta)^{-1} must stay above g(t0+).
  double delta_cap() const;

  /// Smallest delta with a normally representable G value.
  double delta_floor() const;

 private:
  RateFunction f_;
  double gamma_;
  double rel_tol_;
  double log_t_cap_;
  mutable double delta_cap_ = -1.0;
  mutable double delta_floor_ = -1.0;
};

/// Residuals of the three derivative identities satisfied by G:
///   r1: Gdot/G = gamma f(1/G)        (relative)
///   r2: G Gddot <= Gdot^2            (positive part over Gdot^2)
///   r3: G/delta <= Gdot              (positive part over Gdot)
/// Central differences on ln G with one Richardson halving; fd_step <= 0
/// selects the default delta * 1e-4.
struct ClaimResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double max() const { return r1 > r2 ? (r1 > r3 ? r1 : r3) : (r2 > r3 ? r2 : r3); }
};
ClaimResiduals claim_residuals(const RateFunction& f, double gamma,
                               double delta, double fd_step = 0.0);

/// h(t) = eta * f_tilde(t^eta), cross-checked against the defining integral
/// integral_0^{1/t} d delta / (delta g(delta^{-eta})); the two paths must
/// agree to 1e-5 relative or an "internal-consistency" error is thrown.
double holder_rate_h(const RateFunction& f, double eta, double t);

/// Hardy-Littlewood rate: (integral_0^d G(delta)/delta d delta)^{-1} with the
/// decreasing-ratio precondition checked on (0, d].
double hl_rate(const std::function<double(double)>& G_fun, double d);

/// Row of the CLI transform table; NaN marks an inapplicable cell.
struct TransformRow {
  double t = 0.0, f = 0.0, g = 0.0, G_at_inv_t = 0.0, f_tilde = 0.0, h = 0.0;
};
std::vector<TransformRow> transform_table(const RateFunction& f, double gamma,
                                          double eta,
                                          const std::vector<double>& ts);

}  // namespace koblab::rates
