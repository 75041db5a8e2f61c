#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "calabi/errors.hpp"

// Shared one-dimensional numerical kernel: adaptive Gauss-Kronrod quadrature
// (plain and log-domain), bracketed root finding, golden-section search and
// central finite differences. Everything here is a pure function of its
// arguments.
namespace calabi::numerics {

using Function = std::function<double(double)>;

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr double kAbsFloor = 1e-300;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  long evaluations = 0;
};

// Integral of exp(logf) carried as log_value = log_scale + log(scaled_value).
struct LogQuadratureResult {
  double log_value = 0.0;
  double log_scale = 0.0;
  double scaled_value = 0.0;
  double rel_error = 0.0;
  long evaluations = 0;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;  // |f(root)|
  double bracket_width = 0.0;
};

struct SupResult {
  double argmax = 0.0;
  double value = 0.0;
  double bracket_width = 0.0;
};

struct QuadratureOptions {
  double rel_tol = kDefaultRelTol;
  double abs_tol = 0.0;
  long max_evaluations = 4'000'000;
  // Interior points where the integrand has a feature (peak, kink, scale change).
  std::vector<double> breakpoints;
};

// Carries the best estimate reached before the routine gave up.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double partial, double abscissa)
      : NumericalError(what), partial_(partial), abscissa_(abscissa) {}
  double partial_estimate() const { return partial_; }
  double abscissa() const { return abscissa_; }

 private:
  double partial_;
  double abscissa_;
};

/// Adaptive G7-K15 quadrature with global interval bisection.
///
/// Either endpoint may be infinite; semi-infinite pieces are mapped to the unit
/// interval by x = u / (1 - u). The contract is
/// |value - I| <= max(rel_tol * |value|, abs_tol, kAbsFloor) up to the reliability
/// of the Kronrod error estimate.
QuadratureResult integrate(const Function& f, double lo, double hi, const QuadratureOptions& opts);
QuadratureResult integrate(const Function& f, double lo, double hi, double rel_tol = kDefaultRelTol);

/// Integral of exp(logf) over [lo, hi] without overflow or underflow.
///
/// The scale M is the interior maximum of logf, located by sampling followed by
/// golden-section refinement; the routine integrates exp(logf - M).
LogQuadratureResult integrate_logdomain(const Function& logf, double lo, double hi,
                                        double rel_tol = kDefaultRelTol);

/// Same, with the location of the maximum supplied by the caller. The peak is
/// also used as a breakpoint.
LogQuadratureResult integrate_logdomain(const Function& logf, double lo, double hi, double peak,
                                        const QuadratureOptions& opts);

/// Brent's method with bisection safeguard. Requires f(lo) * f(hi) <= 0.
/// Stops once the bracket is narrower than tol * max(1, |root|) or f hits zero.
RootResult find_root(const Function& f, double lo, double hi, double tol);

/// Golden-section search for the maximizer of a unimodal f on [lo, hi].
SupResult sup_search(const Function& f, double lo, double hi, double tol);

/// Central-difference estimate of the m-th derivative (1 <= m <= 4), O(h^2).
double finite_diff(const Function& f, double x0, int order, double h);

/// One Richardson step on finite_diff: (4 D(h/2) - D(h)) / 3, O(h^4).
double richardson_diff(const Function& f, double x0, int order, double h);

double log_sum_exp(std::span<const double> xs);

}  // namespace calabi::numerics
