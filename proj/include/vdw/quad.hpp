#pragma once

// Adaptive Gauss-Kronrod quadrature on finite intervals, half-lines and
// principal-value integrals.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace vdw {

struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  long max_evals = 20000;
  /// Expected exponential decay rate of the integrand at large argument;
  /// 0 selects the algebraic mapping x = t / (1 - t) for the tail.
  double decay_rate = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evals = 0;
  bool converged = false;
};

/// Thrown when the integrand returns a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(double abscissa);
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

using Integrand = std::function<double(double)>;

/// QuadSpec with rel_tol taken from VDW_QUAD_RTOL when that is set to a
/// positive number.
QuadSpec default_quad_spec();

/// Integral over [a, b]. Breakpoints inside (a, b) seed the initial
/// partition; the rest are ignored.
QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadSpec& spec,
                              std::span<const double> breakpoints = {});

/// Integral over [0, inf). Finite panels run between 0 and the sorted
/// breakpoints; beyond the last breakpoint c the tail is mapped to (0, 1] by
/// x = c - ln(u) / decay_rate, or by x = c + t / (1 - t) when decay_rate is 0.
/// All panels share one error budget.
QuadResult integrate_halfline(const Integrand& f, const QuadSpec& spec,
                              std::span<const double> breakpoints = {});

/// Cauchy principal value of the integral of f over [a, b] (b may be +inf),
/// where f has a simple pole at `pole`. The symmetric part around the pole is
/// folded into the regular integrand f(p + t) + f(p - t).
QuadResult integrate_pv(const Integrand& f, double pole, double a, double b,
                        const QuadSpec& spec);

}  // namespace vdw
