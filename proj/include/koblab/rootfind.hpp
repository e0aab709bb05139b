#pragma once

#include <functional>

namespace koblab {

/// Root of a continuous function with a sign change on [a, b] by bisection
/// with secant acceleration. Runs to |b - a| <= xtol + machine resolution.
double bracketed_root(const std::function<double(double)>& f, double a,
                      double b, double xtol = 0.0, int max_iter = 200);

/// Solve g(t) = y for increasing g, searching in log-argument space.
/// The bracket grows from t_floor by doubling log-widths up to t_cap.
/// Throws "out-of-range" when y < g(t_floor) or the cap is reached, per the
/// inversion contract. Relative accuracy on t is machine-level.
double invert_increasing(const std::function<double(double)>& g, double y,
                         double t_floor, double t_cap = 1e300);

/// Same but both sides stay in logs: g_log(L) = g(e^L); returns L with
/// g_log(L) = y. Avoids overflow when the solution t is not representable.
double invert_increasing_log(const std::function<double(double)>& g_log,
                             double y, double log_t_floor,
                             double log_t_cap = 690.0);

}  // namespace koblab
