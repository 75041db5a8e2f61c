#include "calabi/fiber_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "calabi/errors.hpp"

namespace calabi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kWMax = 700.0;  // beyond this the logistic map saturates in double

}  // namespace

BandIntegrand::BandIntegrand(const CoordinateChart& chart, double a, double k) : chart_(chart), a_(a), k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("k must be positive");
  const double top = k * chart.tau0();
  if (!(a >= 1.0 && a <= top * (1.0 + 1e-12)))
    throw InvalidInput("band index must satisfy 1 <= a <= k tau0");
}

void BandIntegrand::point(double w, double& tau, double& delta) const {
  const double t0 = chart_.tau0();
  tau = t0 / (1.0 + std::exp(-w));
  delta = t0 / (1.0 + std::exp(w));
}

EDerivs BandIntegrand::derivs(double tau, double delta) const {
  const auto& mp = chart_.profile();
  const int n = mp.n();
  const double phi = mp.phi_pair(tau, delta);
  const double dphi = mp.dphi_pair(tau, delta);
  const double d2phi = mp.d2phi_pair(tau, delta);
  const double op = 1.0 + tau;
  EDerivs d;
  d.e = e(tau, delta);
  d.d1 = -2.0 * a_ + n * phi / op + 2.0 * k_ * delta + dphi;
  d.d2 = phi * (n * (op * dphi - phi) / (op * op) - 2.0 * k_ + d2phi);
  return d;
}

double BandIntegrand::e(double tau, double delta) const {
  const auto& mp = chart_.profile();
  const double log_phi = 2.0 * std::log(delta) + std::log(mp.eta2(tau));
  return -2.0 * a_ * chart_.t_pair(tau, delta) + mp.n() * std::log1p(tau) - k_ * chart_.g_pair(tau, delta) + log_phi;
}

double BandIntegrand::log_density(double w) const {
  double tau, delta;
  point(w, tau, delta);
  // e^E dt = (1+tau)^n e^{-2at-kg} dtau and dtau/dw = tau delta / tau0.
  return -2.0 * a_ * chart_.t_pair(tau, delta) + chart_.profile().n() * std::log1p(tau) -
         k_ * chart_.g_pair(tau, delta) + std::log(tau) + std::log(delta) - std::log(chart_.tau0());
}

EDerivs e_and_derivs(const CoordinateChart& chart, double a, double k, double tau) {
  if (!(tau > 0.0 && tau < chart.tau0())) throw DomainError("e_and_derivs: tau must lie in (0, tau0)");
  return BandIntegrand(chart, a, k).derivs(tau, chart.tau0() - tau);
}

CriticalPoint critical_point(const CoordinateChart& chart, double a, double k) {
  const BandIntegrand band(chart, a, k);
  auto slope = [&](double w) {
    double tau, delta;
    band.point(w, tau, delta);
    return band.derivs(tau, delta).d1;
  };
  // E' decreases from 2 k tau0 + 2 - 2a at tau = 0 to -2a at tau0.
  double lo = -40.0, hi = 40.0;
  while (slope(lo) <= 0.0) {
    if (lo <= -kWMax) throw NumericalError("critical_point: no sign change of E' near tau = 0");
    lo = std::max(-kWMax, lo - 40.0);
  }
  while (slope(hi) >= 0.0) {
    if (hi >= kWMax) throw NumericalError("critical_point: no sign change of E' near tau0");
    hi = std::min(kWMax, hi + 40.0);
  }
  const auto r = numerics::find_root(slope, lo, hi, 1e-16);
  CriticalPoint cp;
  cp.w = r.root;
  band.point(cp.w, cp.tau_a, cp.delta_a);
  cp.t_a = chart.t_pair(cp.tau_a, cp.delta_a);
  cp.e = band.derivs(cp.tau_a, cp.delta_a);
  cp.predicted_delta = a / k;
  return cp;
}

double FiberBand::laplace_rel_err() const { return std::expm1(log_i_laplace - log_i_exact); }

double log_tail_bound(double f_x0, double fprime_x0) {
  if (!(fprime_x0 < 0.0)) throw NumericalError("tail_bound: slope at the cut must be negative");
  return f_x0 - std::log(-fprime_x0);
}

double tail_bound(const numerics::Function& f, const numerics::Function& fprime, double x0) {
  return std::exp(log_tail_bound(f(x0), fprime(x0)));
}

namespace {

// Point where E drops to target on the side of the peak given by dir (+1 right, -1 left).
// Returns false if E stays above target all the way to the edge of the w range.
bool drop_point(const BandIntegrand& band, double w_peak, double target, int dir, double& w_cut) {
  auto excess = [&](double w) {
    double tau, delta;
    band.point(w, tau, delta);
    return band.e(tau, delta) - target;
  };
  double step = 0.5;
  double far = w_peak + dir * step;
  while (excess(far) > 0.0) {
    if (std::abs(far) >= kWMax) return false;
    step *= 2.0;
    far = std::clamp(w_peak + dir * step, -kWMax, kWMax);
  }
  const double lo = dir > 0 ? w_peak : far;
  const double hi = dir > 0 ? far : w_peak;
  w_cut = numerics::find_root(excess, lo, hi, 1e-13).root;
  return true;
}

}  // namespace

FiberBand compute_band(const CoordinateChart& chart, double a, double k, double rel_tol) {
  if (!(rel_tol > 0.0)) throw InvalidInput("rel_tol must be positive");
  const BandIntegrand band(chart, a, k);
  const CriticalPoint cp = critical_point(chart, a, k);

  FiberBand out;
  out.a = a;
  out.k = k;
  out.t_a = cp.t_a;
  out.tau_a = cp.tau_a;
  out.delta_a = cp.delta_a;
  out.e_a0 = cp.e.e;
  out.e_a2 = cp.e.d2;
  out.w_peak = cp.w;
  if (!(out.e_a2 < 0.0)) throw NumericalError("compute_band: E'' is not negative at the critical point");
  out.log_i_laplace = ia_laplace(out);

  auto log_dens = [&](double w) { return band.log_density(w); };
  for (double drop = std::log(10.0 / rel_tol) + 5.0;; drop += 20.0) {
    const double target = out.e_a0 - drop;
    double w_lo = -kWMax, w_hi = kWMax;
    const bool left_cut = drop_point(band, cp.w, target, -1, w_lo);
    const bool right_cut = drop_point(band, cp.w, target, +1, w_hi);

    numerics::QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    const auto q = numerics::integrate_logdomain(log_dens, w_lo, w_hi, cp.w, opts);

    // Tail masses in the t measure, bounded by concavity of E in t.
    double tail = 0.0;
    double tau, delta;
    if (right_cut || w_hi < kWMax) {
      band.point(w_hi, tau, delta);
      const auto d = band.derivs(tau, delta);
      tail += std::exp(log_tail_bound(d.e, d.d1) - q.log_value);
    }
    if (left_cut || w_lo > -kWMax) {
      band.point(w_lo, tau, delta);
      const auto d = band.derivs(tau, delta);
      tail += std::exp(log_tail_bound(d.e, -d.d1) - q.log_value);
    }

    out.w_lo = w_lo;
    out.w_hi = w_hi;
    out.log_i_exact = std::log(kTwoPi) + q.log_value;
    out.quad_rel_error = q.rel_error;
    out.tail_rel_mass = tail;
    out.evaluations += q.evaluations;
    if (tail <= 0.1 * rel_tol) break;
    if (drop > 2000.0) throw NumericalError("compute_band: tail bound did not certify the truncation");
  }
  if (!std::isfinite(out.log_i_exact)) throw NumericalError("compute_band: non-finite log I_a");
  return out;
}

double ia_exact(const CoordinateChart& chart, double a, double k, double rel_tol) {
  return compute_band(chart, a, k, rel_tol).log_i_exact;
}

double ia_laplace(const FiberBand& band) {
  if (!(band.e_a2 < 0.0)) throw InvalidInput("ia_laplace: E'' must be negative");
  return std::log(kTwoPi) + band.e_a0 + 0.5 * std::log(kTwoPi / -band.e_a2);
}

BandMoments band_moments(const CoordinateChart& chart, const FiberBand& fb, double rel_tol) {
  const BandIntegrand band(chart, fb.a, fb.k);
  const double scale = band.log_density(fb.w_peak);
  auto weight = [&](double w) { return std::exp(band.log_density(w) - scale); };
  numerics::QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.breakpoints = {fb.w_peak};
  const double mass = numerics::integrate(weight, fb.w_lo, fb.w_hi, opts).value;
  const double spread = 1.0 / std::sqrt(-fb.e_a2);  // width of the peak in t

  BandMoments out;
  for (int m = 1; m <= 4; ++m) {
    auto integrand = [&](double w) {
      double tau, delta;
      band.point(w, tau, delta);
      const double s = chart.t_pair(tau, delta) - fb.t_a;
      return std::pow(s, m) * weight(w);
    };
    numerics::QuadratureOptions o = opts;
    // Odd moments nearly cancel; measure them against the natural scale spread^m.
    o.abs_tol = rel_tol * mass * std::pow(spread, m);
    out.i[m] = numerics::integrate(integrand, fb.w_lo, fb.w_hi, o).value / mass;
  }
  return out;
}

NeckCoefficients neck_coefficients(const CoordinateChart& chart, double k, double a0, double rel_tol) {
  const FiberBand fb = compute_band(chart, a0, k, rel_tol);
  const BandMoments mo = band_moments(chart, fb, rel_tol);
  NeckCoefficients c;
  c.a0 = a0;
  c.t_a = fb.t_a;
  c.e_a2 = fb.e_a2;
  c.i1 = mo.i[1];
  c.i2 = mo.i[2];
  c.i3 = mo.i[3];
  c.i4 = mo.i[4];
  const double i1 = c.i1, i2 = c.i2, i3 = c.i3, i4 = c.i4;
  c.c1 = -2.0 * (fb.t_a + i1);
  c.c2 = 2.0 * (i2 - i1 * i1);
  c.c3 = -4.0 / 3.0 * (2.0 * i1 * i1 * i1 - 3.0 * i2 * i1 + i3);
  c.c4 = 2.0 / 3.0 * (-6.0 * std::pow(i1, 4) + 12.0 * i1 * i1 * i2 - 3.0 * i2 * i2 - 4.0 * i1 * i3 + i4);
  return c;
}

NeckFiniteDiff neck_finite_diff(const CoordinateChart& chart, double k, double a0, double h, double rel_tol) {
  auto log_i = [&](double a) { return ia_exact(chart, a, k, rel_tol); };
  NeckFiniteDiff fd;
  fd.c1 = numerics::richardson_diff(log_i, a0, 1, h);
  fd.c2 = 0.5 * numerics::richardson_diff(log_i, a0, 2, h);
  return fd;
}

RatioLemma ratio_lemma_check(const CoordinateChart& chart, double k, const std::vector<double>& a_values) {
  RatioLemma out;
  const double lk = std::log(k);
  double worst2 = 0.0, worst3 = -std::numeric_limits<double>::infinity();
  for (double a : a_values) {
    const auto p0 = critical_point(chart, a, k);
    const auto p1 = critical_point(chart, a + 1.0, k);
    const auto p2 = critical_point(chart, a + 2.0, k);
    const double eta = chart.profile().eta(p0.tau_a);
    const double two = (p0.e.e - p1.e.e - 2.0 * k * eta * std::log((a + 1.0) / a)) / lk;
    const double three = 2.0 * p1.e.e - p0.e.e - p2.e.e;
    out.a_values.push_back(a);
    out.two_term_scaled.push_back(two);
    out.three_term_exponent.push_back(three);
    worst2 = std::max(worst2, std::abs(two));
    worst3 = std::max(worst3, three);
  }
  out.two_term = make_record("two_term_ratio", "E_a0 - E_{a+1,0} = 2 k eta(tau_a) log((a+1)/a) + O(log k)",
                             worst2, 20.0, false);
  // Stored as exponent + (log k)^2 <= 0.
  out.three_term = make_record("three_term_exponent", "2 E_{a+1,0} - E_a0 - E_{a+2,0} <= -(log k)^2",
                               worst3 + lk * lk, 0.0);
  return out;
}

VerificationRecord gaussian_table_check() {
  const double pi = 3.14159265358979323846;
  double worst = 0.0;
  for (double b : {0.5, 1.0, 7.0}) {
    double expected = 1.0;
    for (int m = 1; m <= 4; ++m) {
      expected *= (2.0 * m - 1.0) / (2.0 * b);
      auto f = [&](double x) { return std::pow(x, 2 * m) * std::exp(-b * x * x) * std::sqrt(b / pi); };
      // Even integrand: twice the half line.
      const double got = 2.0 * numerics::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13).value;
      worst = std::max(worst, std::abs(got / expected - 1.0));
    }
  }
  return make_record("gaussian_table", "int x^{2m} e^{-bx^2} sqrt(b/pi) = (2m-1)!!/(2b)^m, m = 1..4", worst, 1e-12);
}

}  // namespace calabi
