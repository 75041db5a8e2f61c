#include "calabi/center_of_mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "calabi/errors.hpp"

namespace calabi {

namespace {

constexpr double kDropCut = 60.0;    // terms this far below the leading one are ignored
constexpr double kWindowLog = 50.0;  // mu_fiber integrates where the band weight exceeds e^{-50}

}  // namespace

BergmanSurrogate::BergmanSurrogate(int n_, double s_m_, double k_, double tau0_)
    : n(n_), s_m(s_m_), k(k_), tau0(tau0_), big_n(k_ * (1.0 + tau0_)) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (!(k > 0.0)) throw InvalidInput("k must be positive");
  if (!(tau0 > 0.0)) throw InvalidInput("tau0 must be positive");
}

double BergmanSurrogate::log_rho(double a) const {
  const double m = big_n - a;
  const double corr = 1.0 + s_m / (2.0 * m);
  if (!(m > 0.0) || !(corr > 0.0)) throw DomainError("Bergman density is not positive for this band");
  return n * std::log(m) + std::log(corr);
}

double BergmanSurrogate::ratio(double a, double b) const { return std::exp(log_rho(b) - log_rho(a)); }

BandSeries::BandSeries(const BergmanSurrogate& surrogate, std::vector<double> log_i) : level_(std::move(log_i)) {
  if (level_.empty()) throw InvalidInput("BandSeries: no bands");
  for (std::size_t i = 0; i < level_.size(); ++i) {
    if (!std::isfinite(level_[i])) throw InvalidInput("BandSeries: missing or non-finite band integral");
    level_[i] = surrogate.log_rho(static_cast<double>(i + 1)) - level_[i];
  }
}

long BandSeries::dominant(double u) const {
  // z_{b+1} - z_b is decreasing in b; the argmax is the first b where it turns nonpositive.
  long lo = 1, hi = bands();
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (level(mid + 1) - level(mid) + u > 0.0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

BandSeries::Stats BandSeries::stats(double u) const {
  const long m = dominant(u);
  const double zmax = z(m, u);
  long lo = m, hi = m;
  while (lo > 1 && z(lo - 1, u) > zmax - kDropCut) --lo;
  while (hi < bands() && z(hi + 1, u) > zmax - kDropCut) ++hi;
  double s = 0.0, s1 = 0.0, s2 = 0.0;
  for (long b = lo; b <= hi; ++b) {
    const double w = std::exp(z(b, u) - zmax);
    const double d = static_cast<double>(b - m);
    s += w;
    s1 += w * d;
    s2 += w * d * d;
  }
  Stats st;
  st.log_partition = zmax + std::log(s);
  const double mean_d = s1 / s;
  st.mean = mean_d + static_cast<double>(m - 1);
  st.var = std::max(0.0, s2 / s - mean_d * mean_d);
  return st;
}

double BandSeries::center(long a) const {
  if (a < 1 || a > bands()) throw InvalidInput("BandSeries::center: band out of range");
  if (bands() == 1) return 0.0;
  if (a == 1) return crossing(1);
  if (a == bands()) return crossing(bands() - 1);
  const double target = static_cast<double>(a - 1);
  auto excess = [&](double u) { return stats(u).mean - target; };
  double lo = crossing(a - 1) - 1.0, hi = crossing(a) + 1.0;
  for (double step = 1.0; excess(lo) > 0.0; step *= 2.0) lo -= step;
  for (double step = 1.0; excess(hi) < 0.0; step *= 2.0) hi += step;
  return numerics::find_root(excess, lo, hi, 1e-14).root;
}

BandSum band_sum(const BandSeries& series, long a, double half_width, int points_per_unit) {
  if (points_per_unit < 1 || !(half_width > 0.0)) throw InvalidInput("band_sum: bad grid");
  BandSum out;
  out.a = a;
  out.u_center = series.center(a);
  const long count = static_cast<long>(std::ceil(2.0 * half_width * points_per_unit));
  for (long i = 0; i <= count; ++i) {
    const double u = out.u_center - half_width + static_cast<double>(i) / points_per_unit;
    out.u.push_back(u);
    out.log_f.push_back(series.log_f(a, u));
  }
  return out;
}

namespace {

// log of the total weight of all bands other than a.
double log_complement(const BandSeries& s, long a, double u) {
  const auto st = s.stats(u);
  const long m = s.dominant(u);
  const double zmax = s.z(m, u);
  long lo = m, hi = m;
  while (lo > 1 && s.z(lo - 1, u) > zmax - kDropCut) --lo;
  while (hi < s.bands() && s.z(hi + 1, u) > zmax - kDropCut) ++hi;
  lo = std::min(lo, std::max(1L, a - 1));
  hi = std::max(hi, std::min(s.bands(), a + 1));
  double ref = -std::numeric_limits<double>::infinity();
  for (long b = lo; b <= hi; ++b)
    if (b != a) ref = std::max(ref, s.z(b, u));
  double sum = 0.0;
  for (long b = lo; b <= hi; ++b)
    if (b != a) sum += std::exp(s.z(b, u) - ref);
  return ref + std::log(sum) - st.log_partition;
}

// Point where g crosses -kWindowLog moving from start in direction dir; g is monotone there.
double window_edge(const std::function<double(double)>& g, double start, int dir) {
  double step = 1.0;
  double far = start + dir * step;
  while (g(far) > -kWindowLog) {
    step *= 2.0;
    far = start + dir * step;
    if (step > 1e8) throw NumericalError("mu_fiber: band weight does not decay");
  }
  const double lo = dir > 0 ? start : far, hi = dir > 0 ? far : start;
  return numerics::find_root([&](double u) { return g(u) + kWindowLog; }, lo, hi, 1e-12).root;
}

}  // namespace

double mu_fiber(const BandSeries& series, long a, double rel_tol) {
  const long nb = series.bands();
  if (a < 1 || a > nb) throw InvalidInput("mu_fiber: band out of range");
  if (nb == 1) return 0.0;  // a single band carries no curvature

  auto log_pi = [&](double u) { return series.log_weight(a, u); };
  auto log_rest = [&](double u) { return log_complement(series, a, u); };
  const double ref = series.center(a);
  double lo, hi;
  if (a == 1) {
    lo = window_edge(log_rest, ref, -1);
    hi = window_edge(log_pi, ref, +1);
  } else if (a == nb) {
    lo = window_edge(log_pi, ref, -1);
    hi = window_edge(log_rest, ref, +1);
  } else {
    lo = window_edge(log_pi, ref, -1);
    hi = window_edge(log_pi, ref, +1);
  }

  numerics::QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  std::vector<double> marks{ref};
  if (a > 1) marks.push_back(series.crossing(a - 1));
  if (a < nb) marks.push_back(series.crossing(a));
  for (double c : std::vector<double>(marks))
    for (double off : {-8.0, -2.0, 2.0, 8.0}) marks.push_back(c + off);
  for (double c : marks)
    if (c > lo && c < hi) opts.breakpoints.push_back(c);

  auto integrand = [&](double u) {
    const auto st = series.stats(u);
    return std::exp(series.z(a, u) - st.log_partition) * st.var;
  };
  return numerics::integrate(integrand, lo, hi, opts).value;
}

ThreeTermResult three_term_integral(double aa, double bb) {
  if (!(aa > 0.0) || !(bb > 0.0) || !(bb < 0.25 * aa * aa))
    throw DomainError("three_term_integral requires aa > 0 and 0 < bb < aa^2/4");
  // In u = log x the integrand is p1 Var(p0, p1, p2) for the weights of 1, aa x, bb x^2.
  auto integrand = [&](double u) {
    const double x = std::exp(u);
    const double q = 1.0 + aa * x + bb * x * x;
    const double p0 = 1.0 / q, p1 = aa * x / q, p2 = bb * x * x / q;
    return p1 * (p0 * p1 + 4.0 * p0 * p2 + p1 * p2);
  };
  const double u1 = -std::log(aa), u2 = std::log(aa / bb);
  numerics::QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  opts.breakpoints = {u1, 0.5 * (u1 + u2), u2};
  ThreeTermResult r;
  r.quadrature = numerics::integrate(integrand, std::min(u1, u2) - 60.0, std::max(u1, u2) + 60.0, opts).value;
  const double d = std::sqrt(aa * aa - 4.0 * bb);
  r.printed_closed_form =
      aa * (aa * std::sqrt(d) - 2.0 * bb * (std::log(1.0 + aa / d) - std::log(std::abs(1.0 - aa / d)))) / (d * d * d);
  return r;
}

double two_term_integral(double aa) {
  if (!(aa > 0.0)) throw DomainError("two_term_integral requires aa > 0");
  auto integrand = [&](double u) {
    const double y = aa * std::exp(u);
    const double p0 = 1.0 / (1.0 + y), p1 = y / (1.0 + y);
    return p0 * p0 * p1;
  };
  const double u1 = -std::log(aa);
  numerics::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  opts.breakpoints = {u1};
  return numerics::integrate(integrand, u1 - 80.0, u1 + 80.0, opts).value;
}

double mu_outside(double c0, double k) {
  if (!(k > 0.0)) throw InvalidInput("k must be positive");
  if (c0 == 0.0) return 1.0;
  return 1.0 - c0 / (2.0 * k);
}

double mu_d_band1(const BergmanSurrogate& s) { return std::exp(s.n * std::log(s.big_n - 1.0) - s.log_rho(1.0)); }

Regime classify(double a, double k, double tau0) {
  const double rk = std::sqrt(k), lk = std::log(k);
  if (a > k * tau0 - rk) return Regime::DeepOutside;
  if (a <= rk / (4.0 * lk)) return Regime::Inside;
  if (a <= 4.0 * rk * lk) return Regime::Neck;
  return Regime::Outside;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Inside: return "inside";
    case Regime::Neck: return "neck";
    case Regime::Outside: return "outside";
    case Regime::DeepOutside: return "deep-outside";
  }
  return "unknown";
}

EnergySummary assemble_energy(const std::vector<BandMu>& bands, const GeometryData& gd, double k, double c0,
                              double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidInput("lambda must lie in (0, 1]");
  const double w = (1.0 - lambda) / lambda;
  const auto vol = volumes(gd, k);
  EnergySummary e;
  e.k = k;
  e.c0 = c0;
  e.sigma = sigma(gd);
  e.dim_hk = dim_hk(gd, k);
  e.v = (vol.vol_lhat + w * vol.vol_d) / e.dim_hk;
  double trace = 0.0, energy = 0.0;
  for (const auto& b : bands) {
    const double entry = b.mu + w * b.mu_d;
    trace += b.multiplicity * entry;
    energy += b.multiplicity * (entry - e.v) * (entry - e.v);
  }
  e.diag_energy = energy;
  e.trace_residual = trace - (vol.vol_lhat + w * vol.vol_d);
  e.modeled_offdiag = e.dim_hk * e.dim_hk / (k * k * k * k);
  return e;
}

VerificationRecord h_profile_check(const BandSeries& series, long a, double k, double eta_tau0) {
  const double beta = k * eta_tau0 / (static_cast<double>(a) * a);
  auto log_h = [&](double v) {
    // Theta-type sum; terms beyond |c| = 200 are far below double resolution here.
    double m = -std::numeric_limits<double>::infinity();
    for (int c = -200; c <= 200; ++c) m = std::max(m, -beta * c * c - c * v);
    double s = 0.0;
    for (int c = -200; c <= 200; ++c) s += std::exp(-beta * c * c - c * v - m);
    return m + std::log(s);
  };
  const double u0 = series.center(a);
  const double f0 = series.log_f(a, u0), h0 = log_h(0.0);
  const double half = std::log(k) * std::log(k);
  double worst = 0.0;
  for (double v = -half; v <= half; v += 0.125) {
    const double df = series.log_f(a, u0 + v) - f0;
    const double dh = log_h(v) - h0;
    worst = std::max(worst, std::abs(df - dh) / std::max(1.0, std::abs(dh)));
  }
  return make_record("h_profile", "shifted log F_a against sum_c e^{-k eta c^2/a^2 - c u}", worst, 0.1, false);
}

}  // namespace calabi
