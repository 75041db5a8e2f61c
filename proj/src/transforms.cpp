#include "calabi/transforms.hpp"

#include <cmath>
#include <limits>

#include "calabi/errors.hpp"
#include "calabi/numerics.hpp"

namespace calabi {

ChebyshevSeries ChebyshevSeries::from_samples(const std::vector<double>& samples, double lo, double hi) {
  // Samples at the Lobatto points cos(pi j / m); discrete cosine transform by direct sum.
  const int m = static_cast<int>(samples.size()) - 1;
  ChebyshevSeries s;
  s.lo_ = lo;
  s.hi_ = hi;
  s.coeffs_.assign(static_cast<std::size_t>(m) + 1, 0.0);
  const double pi = 3.14159265358979323846;
  for (int k = 0; k <= m; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double w = (j == 0 || j == m) ? 0.5 : 1.0;
      acc += w * samples[static_cast<std::size_t>(j)] * std::cos(pi * ((static_cast<long>(j) * k) % (2 * m)) / m);
    }
    acc *= 2.0 / m;
    if (k == 0 || k == m) acc *= 0.5;
    s.coeffs_[static_cast<std::size_t>(k)] = acc;
  }
  return s;
}

double ChebyshevSeries::operator()(double x) const {
  if (coeffs_.empty()) return 0.0;
  const double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    const double b0 = coeffs_[k] + 2.0 * y * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + y * b1 - b2;
}

ChebyshevSeries ChebyshevSeries::integral(double x0) const {
  ChebyshevSeries s;
  s.lo_ = lo_;
  s.hi_ = hi_;
  if (coeffs_.empty()) return s;
  const std::size_t m = coeffs_.size();
  const double half = 0.5 * (hi_ - lo_);
  s.coeffs_.assign(m + 1, 0.0);
  auto c = [&](std::size_t k) { return k < m ? coeffs_[k] : 0.0; };
  for (std::size_t k = 1; k <= m; ++k) {
    const double prev = (k == 1) ? 2.0 * c(0) : c(k - 1);
    s.coeffs_[k] = half * (prev - c(k + 1)) / (2.0 * static_cast<double>(k));
  }
  s.coeffs_[0] = 0.0;
  s.coeffs_[0] = -s(x0);
  return s;
}

CoordinateChart::CoordinateChart(MomentumProfile profile)
    : CoordinateChart(profile, 0.5 * profile.tau0()) {}

CoordinateChart::CoordinateChart(MomentumProfile profile, double tau_ref)
    : profile_(std::move(profile)), tau_ref_(tau_ref) {
  if (!profile_.at_c0()) throw InvalidInput("CoordinateChart requires the profile at c = c0");
  if (!(tau_ref > 0.0 && tau_ref < profile_.tau0())) throw DomainError("tau_ref must lie in (0, tau0)");
  build();
}

namespace {

// Exact quotient by x^a (x - root)^b; the dropped remainders are rounding noise.
Polynomial deflate(Polynomial p, int zero_power, double root, int root_power) {
  for (int i = 0; i < zero_power; ++i) p = p.divide_linear(0.0).first;
  for (int i = 0; i < root_power; ++i) p = p.divide_linear(root).first;
  return p;
}

}  // namespace

void CoordinateChart::build() {
  const int n = profile_.n();
  const double tau0 = profile_.tau0();
  const Polynomial q = one_plus_x_pow(n);
  const Polynomial dq = q.derivative();
  const Polynomial& f = profile_.f_poly();
  const Polynomial& pc = profile_.cofactor();
  const Polynomial dpc = pc.derivative();
  const Polynomial x{{0.0, 1.0}};
  const Polynomial xm = linear_factor(tau0);

  const double f0 = f(0.0), ft = f(tau0), pt = pc(tau0);
  poles_.p_t = q(0.0) / (2.0 * tau0 * tau0 * f0);
  poles_.q_t = q(tau0) / (2.0 * pt);
  poles_.r_t = (dq(tau0) * pt - q(tau0) * dpc(tau0)) / (2.0 * pt * pt);
  poles_.p_g = -q(0.0) / (tau0 * f0);
  poles_.q_g = q(tau0) / (tau0 * ft);

  const Polynomial rt = 0.5 * q - poles_.p_t * (xm * xm * f) - poles_.q_t * (x * f) - poles_.r_t * (x * xm * f);
  const Polynomial rg = q - poles_.p_g * (xm * f) - poles_.q_g * (x * f);
  const Polynomial st = deflate(rt, 1, tau0, 2);
  const Polynomial sg = deflate(rg, 1, tau0, 1);

  smooth_t_ = ChebyshevSeries{};
  smooth_g_ = ChebyshevSeries{};
  if (!st.empty())
    smooth_t_ = ChebyshevSeries::fit([&](double u) { return st(u) / f(u); }, 0.0, tau0).integral(tau_ref_);
  if (!sg.empty())
    smooth_g_ = ChebyshevSeries::fit([&](double u) { return sg(u) / f(u); }, 0.0, tau0).integral(tau_ref_);

  t_shift_ = 0.0;
  g_shift_ = 0.0;
  t_shift_ = t_raw(tau_ref_, tau0 - tau_ref_);
  g_shift_ = g_raw(tau_ref_, tau0 - tau_ref_);
}

double CoordinateChart::t_raw(double tau, double delta) const {
  return poles_.p_t * std::log(tau) + poles_.q_t / delta + poles_.r_t * std::log(delta) + smooth_t_(tau);
}

double CoordinateChart::g_raw(double tau, double delta) const {
  return poles_.p_g * std::log(tau) + poles_.q_g * std::log(delta) + smooth_g_(tau);
}

double CoordinateChart::t_pair(double tau, double delta) const { return t_raw(tau, delta) - t_shift_; }
double CoordinateChart::g_pair(double tau, double delta) const { return g_raw(tau, delta) - g_shift_; }

double CoordinateChart::t_of_tau(double tau) const {
  if (!(tau > 0.0 && tau < tau0())) throw DomainError("t_of_tau: tau must lie in (0, tau0)");
  return t_pair(tau, tau0() - tau);
}

double CoordinateChart::g_of_tau(double tau) const {
  if (!(tau > 0.0 && tau < tau0())) throw DomainError("g_of_tau: tau must lie in (0, tau0)");
  return g_pair(tau, tau0() - tau);
}

double CoordinateChart::t_direct(double tau, double rel_tol) const {
  if (!(tau > 0.0 && tau < tau0())) throw DomainError("t_direct: tau must lie in (0, tau0)");
  return numerics::integrate([&](double x) { return 1.0 / profile_.phi(x); }, tau_ref_, tau, rel_tol).value;
}

double CoordinateChart::g_direct(double tau, double rel_tol) const {
  if (!(tau > 0.0 && tau < tau0())) throw DomainError("g_direct: tau must lie in (0, tau0)");
  const double t0 = tau0();
  return numerics::integrate([&](double x) { return 2.0 * (x - t0) / profile_.phi(x); }, tau_ref_, tau, rel_tol)
      .value;
}

std::pair<double, double> CoordinateChart::tau_delta_of_t(double t) const {
  if (std::isnan(t)) throw InvalidInput("tau_of_t: t is NaN");
  const double t0 = tau0();
  // Logistic parametrization keeps both tau and tau0 - tau accurate.
  auto point = [&](double w) {
    return std::pair<double, double>{t0 / (1.0 + std::exp(-w)), t0 / (1.0 + std::exp(w))};
  };
  auto h = [&](double w) {
    const auto [tau, delta] = point(w);
    if (tau == 0.0) return -std::numeric_limits<double>::infinity();
    if (delta == 0.0) return std::numeric_limits<double>::infinity();
    return t_pair(tau, delta) - t;
  };
  const double w_ref = std::log(tau_ref_ / (t0 - tau_ref_));
  if (t == 0.0) return point(w_ref);
  double lo = w_ref - 1.0, hi = w_ref + 1.0;
  while (h(lo) > 0.0) lo = w_ref - 2.0 * (w_ref - lo);
  while (h(hi) < 0.0) hi = w_ref + 2.0 * (hi - w_ref);
  const auto r = numerics::find_root(h, lo, hi, 1e-16);
  return point(r.root);
}

double CoordinateChart::tau_of_t(double t) const { return tau_delta_of_t(t).first; }

PoincareCheck poincare_check(const CoordinateChart& chart) {
  PoincareCheck out;
  const auto& mp = chart.profile();
  out.limit = 1.0 / mp.eta2_at_tau0();
  for (double t : {1e2, 1e3, 1e4}) {
    const auto [tau, delta] = chart.tau_delta_of_t(t);
    out.t_values.push_back(t);
    out.products.push_back(mp.phi_pair(tau, delta) * t * t);
  }
  out.record = make_record("poincare_limit", "phi(tau(t)) t^2 -> 1/eta2(tau0) (relative, t = 1e4)",
                           std::abs(out.products.back() / out.limit - 1.0), 0.01);
  return out;
}

}  // namespace calabi
