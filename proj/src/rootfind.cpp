#include "koblab/rootfind.hpp"

#include <cmath>
#include <limits>

#include "koblab/errors.hpp"

namespace koblab {

double bracketed_root(const std::function<double(double)>& f, double a,
                      double b, double xtol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    fail("out-of-range", "no sign change on the supplied bracket");

  for (int it = 0; it < max_iter; ++it) {
    double m = 0.5 * (a + b);
    // Secant proposal, accepted only when it stays safely interior.
    const double denom = fb - fa;
    if (denom != 0.0) {
      const double s = b - fb * (b - a) / denom;
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      if (s > lo + 0.1 * (hi - lo) && s < hi - 0.1 * (hi - lo)) m = s;
    }
    if (m == a || m == b) break;  // interval no longer representable
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
    if (std::abs(b - a) <=
        xtol + 4.0 * std::numeric_limits<double>::epsilon() *
                   std::max(std::abs(a), std::abs(b)))
      break;
  }
  return 0.5 * (a + b);
}

double invert_increasing_log(const std::function<double(double)>& g_log,
                             double y, double log_t_floor, double log_t_cap) {
  const double eps = std::numeric_limits<double>::epsilon();
  double lo = log_t_floor;
  double g_lo = g_log(lo);
  if (y < g_lo * (1.0 - 1e-12) && y < g_lo - 1e-300)
    fail("out-of-range", "inversion target below the value at the domain floor");
  if (y <= g_lo) return lo;

  // Grow the bracket by doubling widths in log space.
  double width = 1.0;
  double hi = lo;
  double g_hi = g_lo;
  while (g_hi < y) {
    lo = hi;
    g_lo = g_hi;
    hi = std::min(hi + width, log_t_cap);
    g_hi = g_log(hi);
    width *= 2.0;
    if (hi >= log_t_cap && g_hi < y)
      fail("out-of-range", "inversion target above the configured cap");
  }
  if (g_hi == y) return hi;

  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (lo + hi);
    const double denom = g_hi - g_lo;
    if (denom > 0.0) {
      const double s = lo + (y - g_lo) * (hi - lo) / denom;
      if (s > lo + 0.1 * (hi - lo) && s < hi - 0.1 * (hi - lo)) m = s;
    }
    if (m == lo || m == hi) break;
    const double gm = g_log(m);
    if (gm == y) return m;
    if (gm < y) {
      lo = m;
      g_lo = gm;
    } else {
      hi = m;
      g_hi = gm;
    }
    if (hi - lo <= 4.0 * eps * std::max(1.0, std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

double invert_increasing(const std::function<double(double)>& g, double y,
                         double t_floor, double t_cap) {
  const double L = invert_increasing_log(
      [&](double logt) { return g(std::exp(logt)); }, y, std::log(t_floor),
      std::log(t_cap));
  return std::exp(L);
}

}  // namespace koblab
