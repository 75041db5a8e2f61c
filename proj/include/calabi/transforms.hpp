#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "calabi/polynomial.hpp"
#include "calabi/profile.hpp"
#include "calabi/record.hpp"

namespace calabi {

// Chebyshev series on [lo, hi] with its antiderivative, used for the smooth
// part of the chart integrals.
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  // Adaptively chooses the degree (up to max_degree) until the tail is below tol.
  template <class F>
  static ChebyshevSeries fit(F&& f, double lo, double hi, double tol = 1e-16, int max_degree = 1024);

  double operator()(double x) const;
  bool empty() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Antiderivative vanishing at x0.
  ChebyshevSeries integral(double x0) const;

 private:
  static ChebyshevSeries from_samples(const std::vector<double>& samples, double lo, double hi);
  std::vector<double> coeffs_;
  double lo_ = 0.0, hi_ = 1.0;
};

/// Fiber coordinates of a profile at c = c0.
///
/// t(tau) = int_{tau_ref}^{tau} dx / phi(x) and g(tau) = 2 int_{tau_ref}^{tau} (x - tau0) / phi(x) dx.
/// Both integrands are split by partial fractions into the poles at 0 and tau0,
/// which integrate in closed form, plus a remainder R / f that is smooth on
/// [0, tau0] and is handled by a Chebyshev series.
class CoordinateChart {
 public:
  explicit CoordinateChart(MomentumProfile profile);
  CoordinateChart(MomentumProfile profile, double tau_ref);

  const MomentumProfile& profile() const { return profile_; }
  double tau0() const { return profile_.tau0(); }
  double tau_ref() const { return tau_ref_; }

  // Domain is the open interval (0, tau0); DomainError otherwise.
  double t_of_tau(double tau) const;
  double g_of_tau(double tau) const;
  // Same, from the pair (tau, tau0 - tau); no domain check.
  double t_pair(double tau, double delta) const;
  double g_pair(double tau, double delta) const;

  // Plain adaptive quadrature of the defining integrals; independent of the split.
  double t_direct(double tau, double rel_tol = 1e-12) const;
  double g_direct(double tau, double rel_tol = 1e-12) const;

  double tau_of_t(double t) const;
  // Returns (tau, tau0 - tau) with both components accurate.
  std::pair<double, double> tau_delta_of_t(double t) const;

  // Coefficients of the singular parts, exposed for tests.
  struct PoleData {
    double p_t, q_t, r_t;  // 1/phi ~ p_t/x + q_t/(x-tau0)^2 + r_t/(x-tau0)
    double p_g, q_g;       // 2(x-tau0)/phi ~ p_g/x + q_g/(x-tau0)
  };
  const PoleData& poles() const { return poles_; }

 private:
  void build();
  double t_raw(double tau, double delta) const;
  double g_raw(double tau, double delta) const;

  MomentumProfile profile_;
  double tau_ref_;
  PoleData poles_{};
  ChebyshevSeries smooth_t_, smooth_g_;  // antiderivatives of the remainders, zero at tau_ref
  double t_shift_ = 0.0, g_shift_ = 0.0;
};

// phi(tau(t)) t^2 approaches 1 / eta2(tau0) as t grows.
struct PoincareCheck {
  std::vector<double> t_values;
  std::vector<double> products;
  double limit = 0.0;
  VerificationRecord record;
};
PoincareCheck poincare_check(const CoordinateChart& chart);

template <class F>
ChebyshevSeries ChebyshevSeries::fit(F&& f, double lo, double hi, double tol, int max_degree) {
  for (int deg = 16;; deg *= 2) {
    std::vector<double> samples(static_cast<std::size_t>(deg) + 1);
    for (int j = 0; j <= deg; ++j) {
      const double x = std::cos(3.14159265358979323846 * j / deg);
      samples[static_cast<std::size_t>(j)] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * x);
    }
    ChebyshevSeries s = from_samples(samples, lo, hi);
    double scale = 0.0, tail = 0.0;
    for (double c : s.coeffs_) scale = std::max(scale, std::abs(c));
    for (int j = deg - 3; j <= deg; ++j) tail = std::max(tail, std::abs(s.coeffs_[static_cast<std::size_t>(j)]));
    if (tail <= tol * std::max(scale, 1e-300) * 64.0 || deg >= max_degree) return s;
  }
}

}  // namespace calabi
