#pragma once

#include <vector>

#include "calabi/numerics.hpp"
#include "calabi/record.hpp"
#include "calabi/transforms.hpp"

namespace calabi {

// E_a(t) = -2 a t + n log(1+tau) - k g(tau) + log phi(tau) and its t-derivatives.
struct EDerivs {
  double e = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

EDerivs e_and_derivs(const CoordinateChart& chart, double a, double k, double tau);

// The integrand family of one band, parametrized by w with tau = tau0 / (1 + e^{-w})
// and tau0 - tau = tau0 / (1 + e^{w}); both ends of (0, tau0) stay resolved.
class BandIntegrand {
 public:
  BandIntegrand(const CoordinateChart& chart, double a, double k);

  double a() const { return a_; }
  double k() const { return k_; }
  const CoordinateChart& chart() const { return chart_; }

  void point(double w, double& tau, double& delta) const;
  EDerivs derivs(double tau, double delta) const;
  double e(double tau, double delta) const;
  // log of the t-density e^E dt/dw; integrating its exponential over w gives I_a / (2 pi).
  double log_density(double w) const;

 private:
  const CoordinateChart& chart_;
  double a_, k_;
};

struct CriticalPoint {
  double w = 0.0;
  double tau_a = 0.0;
  double delta_a = 0.0;  // tau0 - tau_a
  double t_a = 0.0;
  double predicted_delta = 0.0;  // a / k
  EDerivs e;
};

// Unique zero of E_a'; requires 1 <= a <= k tau0.
CriticalPoint critical_point(const CoordinateChart& chart, double a, double k);

struct FiberBand {
  double a = 0.0;
  double k = 0.0;
  double t_a = 0.0;
  double tau_a = 0.0;
  double delta_a = 0.0;
  double e_a0 = 0.0;
  double e_a2 = 0.0;
  double log_i_exact = 0.0;
  double log_i_laplace = 0.0;
  double quad_rel_error = 0.0;
  double tail_rel_mass = 0.0;  // certified discarded mass relative to the kept integral
  double w_lo = 0.0, w_peak = 0.0, w_hi = 0.0;
  long evaluations = 0;

  double laplace_rel_err() const;  // I_laplace / I_exact - 1
};

/// Critical data and both values of I_a = 2 pi int e^{E_a} dt.
///
/// The integral runs over the window where E_a >= E_a(t_a) - Delta; Delta grows
/// until the concave tail bound certifies the discarded mass is at most
/// rel_tol / 10 of the kept integral.
FiberBand compute_band(const CoordinateChart& chart, double a, double k,
                       double rel_tol = numerics::kDefaultRelTol);

double ia_exact(const CoordinateChart& chart, double a, double k, double rel_tol = numerics::kDefaultRelTol);
// log of 2 pi e^{E_a(t_a)} sqrt(2 pi / -E_a''(t_a)).
double ia_laplace(const FiberBand& band);

// Upper bound e^{f(x0)} / (-f'(x0)) for int_{x0}^inf e^f, f concave. Throws if f'(x0) >= 0.
double tail_bound(const numerics::Function& f, const numerics::Function& fprime, double x0);
// Same bound in log form from the value and slope at the cut.
double log_tail_bound(double f_x0, double fprime_x0);

// Central moments i_m = int (t - t_a)^m dmu, dmu = e^{E_a} dt / int e^{E_a} dt, m = 1..4.
struct BandMoments {
  double i[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
};
BandMoments band_moments(const CoordinateChart& chart, const FiberBand& band,
                         double rel_tol = numerics::kDefaultRelTol);

struct NeckCoefficients {
  double a0 = 0.0;
  double t_a = 0.0;
  double e_a2 = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double i1 = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0;
};
// Taylor coefficients of a -> log I_a at a0 assembled from the moments.
NeckCoefficients neck_coefficients(const CoordinateChart& chart, double k, double a0,
                                   double rel_tol = numerics::kDefaultRelTol);

// Finite-difference counterparts (h = 1/8 with one Richardson step) of c1 and c2.
struct NeckFiniteDiff {
  double c1 = 0.0;
  double c2 = 0.0;
};
NeckFiniteDiff neck_finite_diff(const CoordinateChart& chart, double k, double a0, double h = 0.125,
                                double rel_tol = numerics::kDefaultRelTol);

// Differences of the peak exponents between neighbouring bands.
struct RatioLemma {
  std::vector<double> a_values;
  std::vector<double> two_term_scaled;  // (E_a0 - E_{a+1,0} - 2 k eta(tau_a) log((a+1)/a)) / log k
  std::vector<double> three_term_exponent;  // 2 E_{a+1,0} - E_a0 - E_{a+2,0}
  VerificationRecord two_term;
  VerificationRecord three_term;
};
RatioLemma ratio_lemma_check(const CoordinateChart& chart, double k, const std::vector<double>& a_values);

// int x^{2m} e^{-b x^2} sqrt(b/pi) dx over the line against (2m-1)!!/(2b)^m,
// m = 1..4, b in {0.5, 1, 7}; residual is the largest relative deviation.
VerificationRecord gaussian_table_check();

}  // namespace calabi
