#pragma once

#include <functional>

namespace koblab {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated Richardson error estimate
  long evals = 0;
};

/// Adaptive Simpson with the Richardson-extrapolated correction term.
/// Subdivision stops when the local error estimate falls below
/// max(rel_tol * |whole interval estimate|, abs_floor) apportioned per half.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double rel_tol = 1e-10,
                            double abs_floor = 0.0, int max_depth = 52);

/// Integral over [0, inf) of a nonnegative integrand that eventually decays.
/// The truncation point u_max is where the integrand falls below 1e-16 of its
/// peak; the finite part is integrated over dyadic segments. Throws
/// "divergent-integral" if no such u_max exists below the probe cap.
QuadResult integrate_decaying(const std::function<double(double)>& f,
                              double rel_tol = 1e-9);

/// Integral over (0, d] of a nonnegative integrand with an integrable
/// endpoint behavior at 0. Dyadic pieces toward 0 plus a geometric tail
/// extrapolation; throws "divergent-integral" when the pieces stop decaying.
QuadResult integrate_dyadic_to_zero(const std::function<double(double)>& f,
                                    double d, double rel_tol = 1e-9,
                                    int max_levels = 220);

}  // namespace koblab
