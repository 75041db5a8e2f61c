#include "calabi/profile.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "calabi/errors.hpp"
#include "calabi/numerics.hpp"

namespace calabi {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

void ProfileParams::validate() const {
  if (n < 1) throw InvalidInput("n must be a positive integer");
  if (!std::isfinite(s_m)) throw InvalidInput("S_M must be finite");
  if (!(s_m < 0.0)) throw InvalidInput("S_M must be negative");
}

NumeratorSplit numerator_split(const ProfileParams& p) {
  p.validate();
  const int n = p.n;
  const Rational s(p.s_m);  // exact: every double is a dyadic rational
  std::vector<double> base(static_cast<std::size_t>(n) + 3, 0.0);
  std::vector<double> slope(static_cast<std::size_t>(n) + 3, 0.0);
  base[1] = 1.0;
  for (int i = 2; i <= n + 2; ++i) {
    base[static_cast<std::size_t>(i)] = to_double(s * binomial(n + 1, i) / (n * (n + 1)));
    slope[static_cast<std::size_t>(i)] = to_double(-binomial(n + 2, i) / ((n + 1) * (n + 2)));
  }
  return NumeratorSplit{Polynomial{std::move(base)}, Polynomial{std::move(slope)}};
}

double eval_phi(const ProfileParams& p, double c, double tau) {
  const auto num = numerator_split(p).at(c);
  return 2.0 * num(tau) / std::pow(1.0 + tau, p.n);
}

double c0_closed_form_n1(double s_m) {
  if (!(s_m < 0.0)) throw InvalidInput("S_M must be negative");
  return s_m - 4.0 / 3.0 + (2.0 / 3.0) * std::sqrt(4.0 - 6.0 * s_m);
}

double tau0_closed_form_n1(double s_m) {
  const double c0 = c0_closed_form_n1(s_m);
  return 3.0 * (s_m - c0) / (2.0 * c0);
}

namespace {

// Local minimizer of phibar to the right of the inflection point, if phibar' changes sign.
// Returns false when phibar is nondecreasing on [0, inf).
bool right_critical_point(const NumeratorSplit& split, double s, double c, double& r2) {
  if (c <= s) return false;  // phibar'' >= 0 on [0, inf)
  const Polynomial d1 = split.at(c).derivative();
  const double tstar = s / c - 1.0;  // phibar'' = (1+t)^(n-1) (S - c (1+t)) vanishes here
  if (d1(tstar) >= 0.0) return false;
  double hi = std::max(1.0, 2.0 * tstar);
  while (d1(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("solve_c0: numerator derivative has no sign change");
  }
  r2 = numerics::find_root([&](double x) { return d1(x); }, tstar, hi, 1e-15).root;
  return true;
}

bool feasible(const NumeratorSplit& split, double s, double c) {
  if (c >= 0.0) return false;  // phibar is eventually concave and unbounded below
  double r2 = 0.0;
  if (!right_critical_point(split, s, c, r2)) return true;
  return split.at(c)(r2) >= 0.0;
}

}  // namespace

C0Solution solve_c0(const ProfileParams& p) {
  p.validate();
  const double s = p.s_m;
  const auto split = numerator_split(p);
  double lo = s * (p.n + 2);
  double hi = 0.0;
  if (!feasible(split, s, lo) || feasible(split, s, hi))
    throw NumericalError("solve_c0: bracket does not separate feasible from infeasible c");

  C0Solution out;
  const double width = 1e-13 * std::max(1.0, std::abs(s));
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(split, s, mid))
      lo = mid;
    else
      hi = mid;
    ++out.bisection_steps;
  }
  double c = lo;

  double tau = 0.0;
  if (!right_critical_point(split, s, c, tau)) {
    // Bisection landed where phibar' only touches zero; the touch point is the inflection.
    tau = s / c - 1.0;
  }

  // Golden-section on phibar around the located minimum, then Newton on phibar'.
  {
    const Polynomial num = split.at(c);
    const Polynomial d1 = num.derivative(), d2 = d1.derivative();
    const double w = 1e-3 * std::max(1.0, tau);
    const auto sup = numerics::sup_search([&](double x) { return -num(x); }, std::max(0.0, tau - w), tau + w, 1e-15);
    tau = sup.argmax;
    const double curv = d2(tau);
    if (curv > 0.0) tau -= d1(tau) / curv;
  }

  // Polish (tau, c) jointly on phibar = 0, phibar' = 0. The Jacobian columns are
  // (phibar', phibar'') in tau and (B, B') in c, with B the slope polynomial.
  const Polynomial b0 = split.slope, b1 = b0.derivative();
  auto residual = [&](double t, double cc) {
    const Polynomial num = split.at(cc);
    return std::hypot(num(t), num.derivative()(t));
  };
  double best = residual(tau, c);
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const Polynomial num = split.at(c);
    const Polynomial d1 = num.derivative(), d2 = d1.derivative();
    const double f1 = num(tau), f2 = d1(tau);
    const double j11 = d1(tau), j12 = b0(tau), j21 = d2(tau), j22 = b1(tau);
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dt = (f1 * j22 - j12 * f2) / det;
    const double dc = (j11 * f2 - j21 * f1) / det;
    const double nt = tau - dt, nc = c - dc;
    if (std::abs(dc) > 1e-6 * std::max(1.0, std::abs(c)) || std::abs(dt) > 1e-4 * std::max(1.0, tau)) break;
    const double r = residual(nt, nc);
    if (!(r < best)) break;
    tau = nt;
    c = nc;
    best = r;
  }

  if (!(c < 0.0) || !(tau > 0.0) || !std::isfinite(tau))
    throw NumericalError("solve_c0: failed to locate the double root");
  out.c0 = c;
  out.tau0 = tau;
  return out;
}

MomentumProfile::MomentumProfile(const ProfileParams& p) : params_(p) {
  const auto sol = solve_c0(p);
  c0_ = sol.c0;
  c_ = sol.c0;
  tau0_ = sol.tau0;
  at_c0_ = true;
  phibar_ = numerator_split(p).at(c_);
  dphibar_ = phibar_.derivative();
  d2phibar_ = dphibar_.derivative();
  build_factorization();
}

MomentumProfile::MomentumProfile(const ProfileParams& p, double c) : params_(p), c_(c) {
  const auto sol = solve_c0(p);
  c0_ = sol.c0;
  tau0_ = sol.tau0;
  at_c0_ = (c == c0_);
  phibar_ = numerator_split(p).at(c_);
  dphibar_ = phibar_.derivative();
  d2phibar_ = dphibar_.derivative();
  if (at_c0_) build_factorization();
}

void MomentumProfile::build_factorization() {
  // Drop the factor x (the constant coefficient is exactly zero), then divide twice by (x - tau0).
  std::vector<double> shifted(phibar_.coeffs.begin() + 1, phibar_.coeffs.end());
  const auto [q1, r1] = Polynomial{std::move(shifted)}.divide_linear(tau0_);
  const auto [q2, r2] = q1.divide_linear(tau0_);
  f_ = q2;
  deflation_residual_ = std::max(std::abs(r1), std::abs(r2));
  cof_ = Polynomial{{0.0, 1.0}} * f_;
  dcof_ = cof_.derivative();
  d2cof_ = dcof_.derivative();
}

void MomentumProfile::require_factored(const char* what) const {
  if (!at_c0_) {
    std::ostringstream os;
    os << what << " requires the profile at c = c0";
    throw InvalidInput(os.str());
  }
}

const Polynomial& MomentumProfile::f_poly() const {
  require_factored("f_poly");
  return f_;
}

const Polynomial& MomentumProfile::cofactor() const {
  require_factored("cofactor");
  return cof_;
}

double MomentumProfile::phi(double tau) const { return phi_pair(tau, tau0_ - tau); }
double MomentumProfile::dphi(double tau) const { return dphi_pair(tau, tau0_ - tau); }
double MomentumProfile::d2phi(double tau) const { return d2phi_pair(tau, tau0_ - tau); }

double MomentumProfile::phi_pair(double tau, double delta) const {
  const double inv = std::pow(1.0 + tau, -params_.n);
  if (!at_c0_) return 2.0 * phibar_(tau) * inv;
  return 2.0 * delta * delta * cof_(tau) * inv;
}

double MomentumProfile::dphi_pair(double tau, double delta) const {
  const int n = params_.n;
  const double u = std::pow(1.0 + tau, -n);
  const double up = -n * u / (1.0 + tau);
  if (!at_c0_) return 2.0 * (dphibar_(tau) * u + phibar_(tau) * up);
  const double w = 2.0 * cof_(tau) * u;
  const double wp = 2.0 * (dcof_(tau) * u + cof_(tau) * up);
  return -2.0 * delta * w + delta * delta * wp;
}

double MomentumProfile::d2phi_pair(double tau, double delta) const {
  const int n = params_.n;
  const double u = std::pow(1.0 + tau, -n);
  const double up = -n * u / (1.0 + tau);
  const double upp = n * (n + 1.0) * u / ((1.0 + tau) * (1.0 + tau));
  if (!at_c0_) return 2.0 * (d2phibar_(tau) * u + 2.0 * dphibar_(tau) * up + phibar_(tau) * upp);
  const double p0 = cof_(tau), p1 = dcof_(tau), p2 = d2cof_(tau);
  const double w = 2.0 * p0 * u;
  const double wp = 2.0 * (p1 * u + p0 * up);
  const double wpp = 2.0 * (p2 * u + 2.0 * p1 * up + p0 * upp);
  return 2.0 * w - 4.0 * delta * wp + delta * delta * wpp;
}

double MomentumProfile::f(double tau) const {
  require_factored("f");
  return f_(tau);
}

double MomentumProfile::eta2(double tau) const {
  require_factored("eta2");
  return 2.0 * cof_(tau) * std::pow(1.0 + tau, -params_.n);
}

FactorCheck factor_check(const MomentumProfile& mp, int grid_size) {
  FactorCheck out;
  if (!mp.at_c0()) {
    out.record = make_record("factor_positivity", "cofactor f > 0 on [0, tau0] at c = c0",
                             std::numeric_limits<double>::quiet_NaN(), 0.0, false);
    out.record.applicable = false;
    return out;
  }
  if (grid_size < 1) throw InvalidInput("factor_check: grid_size must be positive");
  const double tau0 = mp.tau0();
  const Polynomial& num = mp.numerator();
  double mn = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_size; ++j) {
    const double tau = tau0 * (j + 0.5) / grid_size;
    const double delta = tau0 - tau;
    double v;
    if (tau < 1e-3 * tau0 || delta < 1e-3 * tau0)
      v = mp.f(tau);
    else
      v = num(tau) / (tau * delta * delta);
    if (v < mn) {
      mn = v;
      out.argmin = tau;
    }
  }
  out.min_f = mn;
  const double scale = std::pow(1.0 + tau0, -mp.n());
  const Polynomial d1 = num.derivative();
  out.phi_at_tau0 = 2.0 * num(tau0) * scale;
  out.dphi_at_tau0 = 2.0 * (d1(tau0) * scale - mp.n() * num(tau0) * scale / (1.0 + tau0));
  // Strict positivity expressed as -min f <= -DBL_MIN.
  out.record = make_record("factor_positivity", "cofactor f > 0 on [0, tau0] at c = c0", -mn,
                           -std::numeric_limits<double>::min());
  return out;
}

}  // namespace calabi
