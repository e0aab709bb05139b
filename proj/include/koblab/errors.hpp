#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace koblab {

/// Error with a stable machine-readable code. The CLI surfaces the code in
/// JSON reports; library callers can branch on it without string-matching
/// free-form messages.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

// Codes in use:
//   domain-error            argument outside the declared domain of a function
//   divergent-integral      tail test failed, the improper integral diverges
//   out-of-range            inversion target outside the reachable range
//   fd-instability          finite differences saw non-monotone adjacent values
//   out-of-patch            point outside a domain's locality patch
//   non-interior-point      boundary-distance query from a non-interior point
//   non-unique-projection   two nearest boundary points within tolerance
//   strip-violation         grid point outside the requested boundary strip
//   out-of-strip            dyadic-sum evaluation outside its admissible strip
//   missing-family          domain has no usable bumping family
//   nonnegative-rho         peak function requested where rho >= 0
//   calibration-failure     a verified property failed, witness attached
//   calibration-exhausted   parameter search ran out of candidates
//   no-feasible-disc        not even tiny analytic discs fit the domain
//   unsupported-domain      closed-form requested for a domain without one
//   internal-consistency    two evaluation paths disagree beyond tolerance
//   monotonicity-violation  a precondition monotonicity check failed
//   quadrature-failure      adaptive quadrature could not reach tolerance
//   usage                   malformed CLI invocation

}  // namespace koblab
