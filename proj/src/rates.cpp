#include "koblab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "koblab/errors.hpp"
#include "koblab/quadrature.hpp"
#include "koblab/rootfind.hpp"

namespace koblab::rates {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// RateFunction
// ---------------------------------------------------------------------------

RateFunction RateFunction::power(double epsilon, double t0) {
  if (!(epsilon > 0.0)) fail("domain-error", "power exponent must be positive");
  if (!(t0 >= 1.0)) fail("domain-error", "domain floor must be >= 1");
  RateFunction f;
  f.family_ = Family::Power;
  f.eps_ = epsilon;
  f.t0_ = t0;
  return f;
}

RateFunction RateFunction::log_power(double beta, double t0) {
  if (!(beta > 1.0))
    fail("domain-error", "log-power exponent must exceed 1 for integrability");
  // f >= 1 needs ln t >= 1.
  if (!(t0 >= 2.718281828459045 * (1.0 - 1e-15)))
    fail("domain-error", "log-power domain floor must be >= e");
  RateFunction f;
  f.family_ = Family::LogPower;
  f.beta_ = beta;
  f.t0_ = t0;
  return f;
}

RateFunction RateFunction::tabulated(
    std::vector<std::pair<double, double>> samples, double tail_exponent) {
  if (samples.size() < 2) fail("domain-error", "need at least two samples");
  std::sort(samples.begin(), samples.end());
  RateFunction f;
  f.family_ = Family::Tabulated;
  f.tail_exp_ = tail_exponent;
  f.t0_ = samples.front().first;
  if (!(f.t0_ >= 1.0)) fail("domain-error", "samples must start at t >= 1");

  const std::size_t n = samples.size();
  f.lx_.resize(n);
  f.ly_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [t, v] = samples[i];
    if (!(v >= 1.0)) fail("domain-error", "sampled values must be >= 1");
    if (i > 0 && !(v >= samples[i - 1].second))
      fail("monotonicity-violation", "sampled rate function must be monotone");
    if (i > 0 && !(t > samples[i - 1].first))
      fail("domain-error", "sample abscissae must be strictly increasing");
    f.lx_[i] = std::log(t);
    f.ly_[i] = std::log(v);
  }

  // Fritsch-Carlson monotone slopes in log-log coordinates.
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d[i] = (f.ly_[i + 1] - f.ly_[i]) / (f.lx_[i + 1] - f.lx_[i]);
  f.slope_.assign(n, 0.0);
  f.slope_[0] = d[0];
  f.slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0)
      f.slope_[i] = 0.0;
    else
      f.slope_[i] = 2.0 / (1.0 / d[i - 1] + 1.0 / d[i]);  // harmonic mean
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      f.slope_[i] = f.slope_[i + 1] = 0.0;
      continue;
    }
    const double a = f.slope_[i] / d[i];
    const double b = f.slope_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      f.slope_[i] = tau * a * d[i];
      f.slope_[i + 1] = tau * b * d[i];
    }
  }
  return f;
}

double RateFunction::eval_log(double log_t) const {
  switch (family_) {
    case Family::Power:
      return std::exp(eps_ * log_t);
    case Family::LogPower:
      if (!(log_t > 0.0)) fail("domain-error", "log-power needs t > 1");
      return std::pow(log_t, beta_);
    case Family::Tabulated: {
      const double x = log_t;
      if (x >= lx_.back())
        return std::exp(ly_.back() + tail_exp_ * (x - lx_.back()));
      if (x < lx_.front()) fail("domain-error", "below tabulated range");
      const auto it = std::upper_bound(lx_.begin(), lx_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - lx_.begin()) - 1;
      const double hseg = lx_[i + 1] - lx_[i];
      const double s = (x - lx_[i]) / hseg;
      const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
      const double h10 = s * (1.0 - s) * (1.0 - s);
      const double h01 = s * s * (3.0 - 2.0 * s);
      const double h11 = s * s * (s - 1.0);
      const double y = h00 * ly_[i] + h10 * hseg * slope_[i] + h01 * ly_[i + 1] +
                       h11 * hseg * slope_[i + 1];
      return std::exp(y);
    }
  }
  return kNaN;
}

double RateFunction::operator()(double t) const {
  if (!(t >= t0_ * (1.0 - 1e-15)))
    fail("domain-error", "evaluation below the domain floor");
  return eval_log(std::log(t));
}

double RateFunction::derivative_times_t_log(double log_t) const {
  switch (family_) {
    case Family::Power:
      return eps_ * eval_log(log_t);
    case Family::LogPower:
      return beta_ * std::pow(log_t, beta_ - 1.0);
    case Family::Tabulated: {
      // d ln f / d ln t times f.
      const double x = log_t;
      double dlog;
      if (x >= lx_.back()) {
        dlog = tail_exp_;
      } else if (x < lx_.front()) {
        fail("domain-error", "below tabulated range");
      } else {
        const auto it = std::upper_bound(lx_.begin(), lx_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - lx_.begin()) - 1;
        const double hseg = lx_[i + 1] - lx_[i];
        const double s = (x - lx_[i]) / hseg;
        const double dh00 = 6.0 * s * (s - 1.0);
        const double dh10 = (1.0 - s) * (1.0 - 3.0 * s);
        const double dh01 = -dh00;
        const double dh11 = s * (3.0 * s - 2.0);
        dlog = (dh00 * ly_[i] + dh01 * ly_[i + 1]) / hseg + dh10 * slope_[i] +
               dh11 * slope_[i + 1];
      }
      return dlog * eval_log(x);
    }
  }
  return kNaN;
}

double RateFunction::param() const {
  return family_ == Family::Power ? eps_ : beta_;
}

bool RateFunction::tail_integrable() const {
  switch (family_) {
    case Family::Power:
      return true;
    case Family::LogPower:
      return beta_ > 1.0;
    case Family::Tabulated:
      return tail_exp_ > 0.0;
  }
  return false;
}

bool RateFunction::weighted_tail_integrable() const {
  switch (family_) {
    case Family::Power:
      return true;
    case Family::LogPower:
      return beta_ > 2.0;
    case Family::Tabulated:
      return tail_exp_ > 0.0;
  }
  return false;
}

RateFunction::CapFlags RateFunction::cap_flags(double t_hi) const {
  CapFlags flags{true, true};
  for (int i = 0; i <= 200; ++i) {
    const double lt = std::log(t0_ + 1e-12) +
                      (std::log(t_hi) - std::log(t0_ + 1e-12)) * i / 200.0;
    const double v = eval_log(lt);
    if (v > std::exp(0.5 * lt) * (1.0 + 1e-12)) flags.le_sqrt_t = false;
    if (v > std::exp(lt) * (1.0 + 1e-12)) flags.le_t = false;
  }
  return flags;
}

std::string RateFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Power:
      os << "power:" << eps_;
      break;
    case Family::LogPower:
      os << "logpower:" << beta_;
      break;
    case Family::Tabulated:
      os << "tabulated[" << lx_.size() << " samples, tail " << tail_exp_ << "]";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

double g_of_log(const RateFunction& f, double log_t, double rel_tol) {
  if (!(log_t > std::log(f.domain_floor())))
    fail("domain-error", "g is defined strictly above the domain floor");
  if (!f.tail_integrable())
    fail("divergent-integral",
         "tail integral of 1/(a f(a)) diverges for " + f.describe());
  // f already overflows a double here; g is +inf for bracketing purposes.
  if (!(f.eval_log(log_t) < std::numeric_limits<double>::infinity()))
    return std::numeric_limits<double>::infinity();
  // a = t e^u turns the tail integral into integral_0^inf du / f(t e^u).
  const QuadResult q = integrate_decaying(
      [&](double u) { return 1.0 / f.eval_log(log_t + u); }, rel_tol);
  return 1.0 / q.value;
}

double g_of(const RateFunction& f, double t, double rel_tol) {
  return g_of_log(f, std::log(t), rel_tol);
}

double g_star(const std::function<double(double)>& g, double y, double t_floor,
              double t_cap) {
  return invert_increasing(g, y, t_floor, t_cap);
}

double G_of(const std::function<double(double)>& g, double gamma, double delta,
            double t_floor, double t_cap) {
  if (!(delta > 0.0) || !(gamma > 0.0))
    fail("domain-error", "G needs positive gamma and delta");
  return 1.0 / g_star(g, 1.0 / (gamma * delta), t_floor, t_cap);
}

double f_tilde(const RateFunction& f, double t, double rel_tol) {
  if (!(t > f.domain_floor()))
    fail("domain-error", "f_tilde is defined strictly above the domain floor");
  if (!f.weighted_tail_integrable())
    fail("divergent-integral",
         "log-weighted tail integral diverges for " + f.describe());
  const double log_t = std::log(t);
  const QuadResult q = integrate_decaying(
      [&](double u) { return u / f.eval_log(log_t + u); }, rel_tol);
  return 1.0 / q.value;
}

// ---------------------------------------------------------------------------
// GFunction
// ---------------------------------------------------------------------------

GFunction::GFunction(RateFunction f, double gamma, double rel_tol, double t_cap)
    : f_(std::move(f)), gamma_(gamma), rel_tol_(rel_tol),
      // The inversion lives in L = ln t, where solutions far beyond any
      // representable t are still meaningful (ln G = -L stays finite); the
      // internal cap is therefore much larger than ln(t_cap).
      log_t_cap_(std::max(std::log(t_cap), 1e18)) {
  if (!(gamma > 0.0)) fail("domain-error", "gamma must be positive");
  if (!f_.tail_integrable())
    fail("divergent-integral", "g undefined: " + f_.describe());
}

double GFunction::g_log(double log_t) const { return g_of_log(f_, log_t, rel_tol_); }

double GFunction::g(double t) const { return g_of_log(f_, std::log(t), rel_tol_); }

double GFunction::log_g_star(double y) const {
  const double floor_log = std::log(f_.domain_floor()) + 1e-9;
  // Newton in L = ln t with bracket safeguard: d g(e^L) / dL = g^2 / f.
  double lo = floor_log;
  double g_lo = g_log(lo);
  if (y < g_lo * (1.0 - 1e-12))
    fail("out-of-range", "inversion target below g at the domain floor");
  if (y <= g_lo) return lo;

  double width = 1.0;
  double hi = lo;
  double g_hi = g_lo;
  while (g_hi < y) {
    lo = hi;
    g_lo = g_hi;
    hi = hi + width;
    if (hi > log_t_cap_) {
      hi = log_t_cap_;
      g_hi = g_log(hi);
      if (g_hi < y)
        fail("out-of-range", "inversion target above g at the cap");
      break;
    }
    g_hi = g_log(hi);
    width *= 2.0;
  }

  double L = 0.5 * (lo + hi);
  double gL = g_log(L);
  for (int it = 0; it < 80; ++it) {
    if (gL < y) {
      lo = L;
      g_lo = gL;
    } else {
      hi = L;
      g_hi = gL;
    }
    const double deriv = gL * gL / f_.eval_log(L);
    double next = L - (gL - y) / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - L) <=
        4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(L))) {
      L = next;
      break;
    }
    L = next;
    gL = g_log(L);
  }
  return L;
}

double GFunction::log_value(double delta) const {
  if (!(delta > 0.0)) fail("domain-error", "ln G needs delta > 0");
  if (!(delta <= delta_cap()))
    fail("out-of-range", "delta above the admissible range of G");
  return -log_g_star(1.0 / (gamma_ * delta));
}

double GFunction::operator()(double delta) const {
  if (delta == 0.0) return 0.0;  // G(0) = 0 by definition
  return std::exp(log_value(delta));
}

double GFunction::dot(double delta) const {
  const double lg = log_value(delta);
  return gamma_ * std::exp(lg) * f_.eval_log(-lg);
}

double GFunction::ddot(double delta) const {
  const double lg = log_value(delta);
  const double G = std::exp(lg);
  const double fv = f_.eval_log(-lg);
  const double tfp = f_.derivative_times_t_log(-lg);  // t f'(t) at t = 1/G
  const double Gdot = gamma_ * G * fv;
  return gamma_ * Gdot * (fv - tfp / G);
}

double GFunction::inverse(double s) const {
  if (!(s > 0.0)) fail("domain-error", "G* needs s > 0");
  return 1.0 / (gamma_ * g_of_log(f_, -std::log(s), rel_tol_));
}

double GFunction::delta_cap() const {
  if (delta_cap_ < 0.0) {
    const double g_floor = g_of_log(f_, std::log(f_.domain_floor()) + 1e-9, rel_tol_);
    delta_cap_ = 1.0 / (gamma_ * g_floor) * (1.0 - 1e-9);
  }
  return delta_cap_;
}

double GFunction::delta_floor() const {
  if (delta_floor_ < 0.0) {
    // Smallest delta whose G stays above ~1e-290: bisection on log delta.
    const double target = std::log(1e-290);
    double lo = std::log(delta_cap()) - 1.0;
    if (log_value(std::exp(lo)) <= target) {
      delta_floor_ = std::exp(lo + 1.0);
      return delta_floor_;
    }
    double hi = lo;  // lo will move down until ln G crosses the target
    for (int i = 0; i < 60; ++i) {
      lo -= 8.0;
      bool below;
      try {
        below = log_value(std::exp(lo)) <= target;
      } catch (const Error&) {
        below = true;
      }
      if (below) break;
      hi = lo;
      if (lo < std::log(1e-280)) {
        delta_floor_ = 1e-280;
        return delta_floor_;
      }
    }
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      bool below;
      try {
        below = log_value(std::exp(mid)) <= target;
      } catch (const Error&) {
        below = true;
      }
      (below ? lo : hi) = mid;
      if (hi - lo < 1e-3) break;
    }
    delta_floor_ = std::exp(hi);
  }
  return delta_floor_;
}

// ---------------------------------------------------------------------------
// Identity residuals
// ---------------------------------------------------------------------------

ClaimResiduals claim_residuals(const RateFunction& f, double gamma,
                               double delta, double fd_step) {
  GFunction G(f, gamma);
  if (!(delta > 0.0) || !(delta < G.delta_cap()))
    fail("domain-error", "delta outside the admissible range of G");
  double h = fd_step > 0.0 ? fd_step : delta * 1e-4;
  if (!(h < 0.25 * delta))
    fail("domain-error", "finite-difference step too large relative to delta");

  // All differencing happens on Lambda = ln G; the identities become
  //   Lambda'        = gamma f(e^{-Lambda})          (r1)
  //   Lambda''       <= 0                            (r2, log-concavity)
  //   1/(delta L')   <= 1                            (r3)
  const auto L = [&](double x) { return G.log_value(x); };
  const double Lm2 = L(delta - h), Lm1 = L(delta - 0.5 * h), L0 = L(delta),
               Lp1 = L(delta + 0.5 * h), Lp2 = L(delta + h);
  if (!(Lm2 < Lm1 && Lm1 < L0 && L0 < Lp1 && Lp1 < Lp2))
    fail("fd-instability", "ln G not monotone across the stencil");

  const double D_h = (Lp2 - Lm2) / (2.0 * h);
  const double D_h2 = (Lp1 - Lm1) / h;
  const double Lp = (4.0 * D_h2 - D_h) / 3.0;  // one Richardson halving

  const double S_h = (Lp2 - 2.0 * L0 + Lm2) / (h * h);
  const double S_h2 = (Lp1 - 2.0 * L0 + Lm1) / (0.25 * h * h);
  const double Lpp = (4.0 * S_h2 - S_h) / 3.0;

  ClaimResiduals r;
  const double rhs = gamma * f.eval_log(-L0);
  r.r1 = std::abs(Lp - rhs) / rhs;
  r.r2 = std::max(0.0, Lpp / (Lp * Lp));
  r.r3 = std::max(0.0, 1.0 / (delta * Lp) - 1.0);
  return r;
}

// ---------------------------------------------------------------------------
// Hoelder rate
// ---------------------------------------------------------------------------

double holder_rate_h(const RateFunction& f, double eta, double t) {
  if (!(eta > 0.0 && eta <= 1.0))
    fail("domain-error", "eta must lie in (0, 1]");
  const double log_te = eta * std::log(t);
  if (!(log_te > std::log(f.domain_floor())))
    fail("domain-error", "t^eta does not exceed the domain floor");

  // Closed-form path.
  if (!f.weighted_tail_integrable())
    fail("divergent-integral",
         "log-weighted tail integral diverges for " + f.describe());
  const QuadResult ft = integrate_decaying(
      [&](double u) { return u / f.eval_log(log_te + u); }, 1e-10);
  const double path1 = eta / ft.value;

  // Defining integral: delta = e^{-v}, v = ln t + u, so
  // (h)^{-1} = integral_0^inf du / g(e^{eta (ln t + u)}).
  const double log_t = std::log(t);
  const QuadResult direct = integrate_decaying(
      [&](double u) { return 1.0 / g_of_log(f, eta * (log_t + u), 1e-10); },
      1e-8);
  const double path2 = 1.0 / direct.value;

  if (std::abs(path1 - path2) > 1e-5 * std::abs(path1))
    fail("internal-consistency",
         "holder rate evaluation paths disagree beyond 1e-5");
  return path1;
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood rate
// ---------------------------------------------------------------------------

double hl_rate(const std::function<double(double)>& G_fun, double d) {
  if (!(d > 0.0)) fail("domain-error", "d must be positive");
  // G(delta)/delta must be nonincreasing in delta on (0, d].
  double prev = -1.0;
  for (int i = 0; i <= 120; ++i) {
    const double delta = d * std::exp(-0.1 * i);  // d down to ~ d * 6e-6
    const double q = G_fun(delta) / delta;
    if (prev >= 0.0 && q < prev * (1.0 - 1e-9))
      fail("monotonicity-violation",
           "G(delta)/delta increases toward the endpoint d");
    prev = q;
  }
  const QuadResult q = integrate_dyadic_to_zero(
      [&](double delta) { return G_fun(delta) / delta; }, d, 1e-10);
  return 1.0 / q.value;
}

// ---------------------------------------------------------------------------
// Transform table
// ---------------------------------------------------------------------------

std::vector<TransformRow> transform_table(const RateFunction& f, double gamma,
                                          double eta,
                                          const std::vector<double>& ts) {
  std::vector<TransformRow> rows;
  GFunction G(f, gamma);
  for (double t : ts) {
    TransformRow row;
    row.t = t;
    row.f = f(t);
    row.g = g_of(f, t);
    try {
      row.G_at_inv_t = G(1.0 / t);
    } catch (const Error&) {
      row.G_at_inv_t = kNaN;
    }
    try {
      row.f_tilde = f_tilde(f, t);
    } catch (const Error&) {
      row.f_tilde = kNaN;
    }
    try {
      row.h = holder_rate_h(f, eta, t);
    } catch (const Error&) {
      row.h = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace koblab::rates
