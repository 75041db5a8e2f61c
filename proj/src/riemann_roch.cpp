#include "calabi/riemann_roch.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <numeric>

#include "calabi/errors.hpp"

namespace calabi {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rational& r) { return r.convert_to<double>(); }

template <class T>
T ipow(T base, int e) {
  T r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <class T>
T factorial(int m) {
  T r(1);
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

Rational exact_tau0(const GeometryData& gd) { return Rational(gd.tau0_ratio->first, gd.tau0_ratio->second); }

template <class T>
ChiCoefficients chi_impl(int n, T ln, T lk, T tau0) {
  const T t = T(1) + tau0;
  const T a0 = (ipow(t, n + 1) - 1) * ln;
  const T a1 = -T(n + 1) / 2 * (ipow(t, n) - 1) * (ln + lk);
  if constexpr (std::is_same_v<T, Rational>)
    return ChiCoefficients{to_double(a0), to_double(a1)};
  else
    return ChiCoefficients{a0, a1};
}

template <class T>
Volumes volumes_impl(int n, T ln, T tau0, T k) {
  const T t = T(1) + tau0;
  const T base = k * t - 1;
  const T vl = (ipow(base, n + 1) - ipow(k, n + 1)) * ln / factorial<T>(n + 1);
  const T vd = ipow(base, n) * ln / factorial<T>(n);
  const T b0 = (ipow(t, n + 1) - 1) * ln;
  const T b1 = -T(n + 1) / 2 * ipow(t, n) * ln;
  if constexpr (std::is_same_v<T, Rational>)
    return Volumes{to_double(vl), to_double(vd), to_double(b0), to_double(b1)};
  else
    return Volumes{vl, vd, b0, b1};
}

}  // namespace

void GeometryData::validate() const {
  if (n < 1) throw InvalidInput("n must be a positive integer");
  if (ln <= 0) throw InvalidInput("L^n must be positive (ample L)");
  if (!(tau0 >= 0.0) || !std::isfinite(tau0)) throw InvalidInput("tau0 must be finite and nonnegative");
  if (tau0_ratio && (tau0_ratio->second <= 0 || tau0_ratio->first < 0))
    throw InvalidInput("tau0 ratio must be p/q with p >= 0, q > 0");
}

GeometryData curve_geometry(int genus, int degree, double tau0) {
  if (genus < 2) throw InvalidInput("genus must be at least 2");
  if (degree < 1) throw InvalidInput("degree must be positive");
  GeometryData gd;
  gd.n = 1;
  gd.ln = degree;
  gd.lk = 2LL * genus - 2;
  gd.tau0 = tau0;
  return gd;
}

std::pair<long long, long long> parse_ratio(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw InvalidInput("cannot parse '" + text + "' as a rational number");
    return v;
  };
  long long p = 0, q = 1;
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  if (slash != std::string::npos) {
    p = parse_int(std::string_view(text).substr(0, slash));
    q = parse_int(std::string_view(text).substr(slash + 1));
  } else if (dot != std::string::npos) {
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac = text.size() - dot - 1;
    if (frac > 15) throw InvalidInput("too many decimals in '" + text + "'");
    p = parse_int(digits);
    for (std::size_t i = 0; i < frac; ++i) q *= 10;
  } else {
    p = parse_int(text);
  }
  if (q <= 0) throw InvalidInput("denominator must be positive in '" + text + "'");
  const long long g = std::gcd(p, q);
  return {p / g, q / g};
}

double smcurvature(const GeometryData& gd) {
  gd.validate();
  return -static_cast<double>(gd.n) * static_cast<double>(gd.lk) / static_cast<double>(gd.ln);
}

ChiCoefficients chi_coefficients(const GeometryData& gd) {
  gd.validate();
  if (gd.exact()) return chi_impl<Rational>(gd.n, Rational(gd.ln), Rational(gd.lk), exact_tau0(gd));
  return chi_impl<double>(gd.n, static_cast<double>(gd.ln), static_cast<double>(gd.lk), gd.tau0);
}

Volumes volumes(const GeometryData& gd, double k) {
  gd.validate();
  if (!(k >= 1.0)) throw InvalidInput("k must be at least 1");
  if (gd.exact()) return volumes_impl<Rational>(gd.n, Rational(gd.ln), exact_tau0(gd), Rational(k));
  return volumes_impl<double>(gd.n, static_cast<double>(gd.ln), gd.tau0, k);
}

double sigma(const GeometryData& gd) {
  gd.validate();
  const int n = gd.n;
  if (gd.exact()) {
    const Rational t = 1 + exact_tau0(gd);
    const Rational a0 = (ipow(t, n + 1) - 1) * gd.ln;
    if (a0 == 0) throw InvalidInput("sigma: a0 vanishes (tau0 = 0)");
    const Rational diff = Rational(n + 1) / 2 * ((ipow(t, n) - 1) * gd.lk - gd.ln);
    return to_double(diff / a0);
  }
  const double t = 1.0 + gd.tau0;
  const double a0 = (std::pow(t, n + 1) - 1.0) * static_cast<double>(gd.ln);
  if (a0 == 0.0) throw InvalidInput("sigma: a0 vanishes (tau0 = 0)");
  const double diff =
      0.5 * (n + 1) * ((std::pow(t, n) - 1.0) * static_cast<double>(gd.lk) - static_cast<double>(gd.ln));
  return diff / a0;
}

VerificationRecord sigma_identity(const GeometryData& gd, const MomentumProfile& mp) {
  const double residual = std::abs(0.5 * mp.c0() + sigma(gd));
  auto rec = make_record("sigma_identity", "c0/2 = -sigma with S = -n lk/ln", residual, 1e-8);
  if (gd.n != 1) rec.hard = false;  // the curvature normalization is only established for curves
  return rec;
}

long band_count(const GeometryData& gd, double k) {
  gd.validate();
  if (gd.exact()) {
    const Rational kt = Rational(k) * exact_tau0(gd);
    const BigInt fl = boost::multiprecision::numerator(kt) / boost::multiprecision::denominator(kt);
    return fl.convert_to<long>();
  }
  return static_cast<long>(std::floor(k * gd.tau0 * (1.0 + 1e-14)));
}

std::vector<double> band_multiplicities(const GeometryData& gd, double k) {
  gd.validate();
  const long bands = band_count(gd, k);
  std::vector<double> m(static_cast<std::size_t>(std::max(0L, bands)));
  if (gd.n == 1) {
    // h0 on a curve of degree e > 2g - 2 is e + 1 - g.
    if (gd.exact()) {
      const Rational nn = Rational(k) * (1 + exact_tau0(gd));
      for (long a = 1; a <= bands; ++a) {
        const Rational e = (nn - a) * gd.ln;
        if (e <= gd.lk)
          throw InvalidInput("band " + std::to_string(a) + " has degree <= 2g - 2; outside the vanishing range");
        m[static_cast<std::size_t>(a - 1)] = to_double(e - Rational(gd.lk, 2));
      }
    } else {
      const double nn = k * (1.0 + gd.tau0);
      for (long a = 1; a <= bands; ++a) {
        const double e = (nn - static_cast<double>(a)) * static_cast<double>(gd.ln);
        if (e <= static_cast<double>(gd.lk))
          throw InvalidInput("band " + std::to_string(a) + " has degree <= 2g - 2; outside the vanishing range");
        m[static_cast<std::size_t>(a - 1)] = e - 0.5 * static_cast<double>(gd.lk);
      }
    }
    return m;
  }
  const double nn = k * (1.0 + gd.tau0);
  const double fact = factorial<double>(gd.n);
  for (long a = 1; a <= bands; ++a)
    m[static_cast<std::size_t>(a - 1)] =
        std::pow(nn - static_cast<double>(a), gd.n) * static_cast<double>(gd.ln) / fact;
  return m;
}

double dim_hk(const GeometryData& gd, double k) {
  gd.validate();
  if (gd.exact() && gd.n == 1) {
    const long bands = band_count(gd, k);
    const Rational nn = Rational(k) * (1 + exact_tau0(gd));
    Rational total(0);
    for (long a = 1; a <= bands; ++a) total += (nn - a) * gd.ln - Rational(gd.lk, 2);
    return to_double(total);
  }
  const auto chi = chi_coefficients(gd);
  return (chi.a0 * std::pow(k, gd.n + 1) + chi.a1 * std::pow(k, gd.n)) / factorial<double>(gd.n + 1);
}

DimensionReport dimension_report(const GeometryData& gd, double k) {
  DimensionReport r;
  r.k = k;
  r.exact = gd.exact();
  r.chi = chi_coefficients(gd);
  r.vol = volumes(gd, k);
  r.sigma = sigma(gd);
  r.multiplicities = band_multiplicities(gd, k);
  r.dim_hk = dim_hk(gd, k);
  return r;
}

}  // namespace calabi
