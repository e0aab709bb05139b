#include "koblab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "koblab/errors.hpp"

namespace koblab {

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  long evals = 0;
  double err = 0.0;

  double eval(double x) {
    ++evals;
    return (*f)(x);
  }

  // One-interval recursion carrying endpoint/midpoint values.
  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double refined = left + right;
    const double correction = (refined - whole) / 15.0;

    if (depth <= 0 || std::abs(correction) <= tol) {
      err += std::abs(correction);
      return refined + correction;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double rel_tol, double abs_floor,
                            int max_depth) {
  SimpsonState st;
  st.f = &f;
  const double fa = st.eval(a);
  const double fb = st.eval(b);
  const double fm = st.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(rel_tol * std::abs(whole), abs_floor);
  const double v = st.recurse(a, b, fa, fm, fb, whole, tol, max_depth);
  return {v, st.err, st.evals};
}

QuadResult integrate_decaying(const std::function<double(double)>& f,
                              double rel_tol) {
  // Locate the peak over dyadic probes, then the decay point.
  double peak = f(0.0);
  double peak_u = 0.0;
  long evals = 1;
  for (int j = -6; j <= 80; ++j) {
    const double u = std::ldexp(1.0, j);
    const double v = f(u);
    ++evals;
    if (v > peak) {
      peak = v;
      peak_u = u;
    }
  }
  if (!(peak > 0.0))
    fail("divergent-integral", "integrand is not positive anywhere sampled");

  const double cutoff = 1e-16 * peak;
  double u_max = std::max(1.0, 2.0 * peak_u);
  while (f(u_max) > cutoff) {
    ++evals;
    u_max *= 2.0;
    if (u_max > std::ldexp(1.0, 90))
      fail("divergent-integral",
           "integrand never decays below 1e-16 of its peak");
  }

  // Dyadic segments [0,1],[1,2],[2,4],... up to u_max.
  QuadResult total;
  total.evals = evals;
  double kahan_c = 0.0;
  double lo = 0.0;
  double hi = std::min(1.0, u_max);
  for (;;) {
    const double floor_abs =
        0.1 * rel_tol * std::max(std::abs(total.value), peak * 1e-6);
    const QuadResult seg = adaptive_simpson(f, lo, hi, 0.25 * rel_tol, floor_abs);
    // Kahan-compensated accumulation keeps t-jitter at machine level.
    const double y = seg.value - kahan_c;
    const double t = total.value + y;
    kahan_c = (t - total.value) - y;
    total.value = t;
    total.abs_error += seg.abs_error;
    total.evals += seg.evals;
    if (hi >= u_max) break;
    lo = hi;
    hi = std::min(2.0 * hi, u_max);
  }
  return total;
}

QuadResult integrate_dyadic_to_zero(const std::function<double(double)>& f,
                                    double d, double rel_tol, int max_levels) {
  if (!(d > 0.0)) fail("domain-error", "upper endpoint must be positive");

  QuadResult total;
  double prev_piece = -1.0;
  double piece = 0.0;
  int level = 0;
  for (; level < max_levels; ++level) {
    const double hi = d * std::ldexp(1.0, -level);
    const double lo = 0.5 * hi;
    const QuadResult seg =
        adaptive_simpson(f, lo, hi, 0.25 * rel_tol,
                         0.1 * rel_tol * std::max(total.value, 1e-300));
    prev_piece = piece;
    piece = seg.value;
    total.value += seg.value;
    total.abs_error += seg.abs_error;
    total.evals += seg.evals;
    if (level >= 4 && piece <= 1e-16 * total.value) break;
  }

  if (level >= max_levels - 1) {
    // Pieces p_k behave like 2^{-alpha k}; a vanishing fitted alpha means the
    // partial sums grow without bound (log-type divergence).
    const double alpha =
        (prev_piece > 0.0 && piece > 0.0) ? std::log2(prev_piece / piece) : 0.0;
    if (alpha < 0.05)
      fail("divergent-integral",
           "dyadic pieces do not decay; integral toward 0 diverges");
    const double ratio = std::pow(2.0, -alpha);
    total.value += piece * ratio / (1.0 - ratio);
  } else if (prev_piece > 0.0 && piece > 0.0 && piece < prev_piece) {
    const double ratio = piece / prev_piece;
    total.value += piece * ratio / (1.0 - ratio);
  }
  return total;
}

}  // namespace koblab
