#pragma once

// Reference values computed outside the library: closed forms written out by hand,
// brute-force Simpson, and 40-digit mpmath results frozen below.

#include <cmath>

namespace oracle {

inline double c0_n1(double s) { return s - 4.0 / 3.0 + 2.0 / 3.0 * std::sqrt(4.0 - 6.0 * s); }
inline double tau0_n1(double s) {
  const double c = c0_n1(s);
  return 3.0 * (s - c) / (2.0 * c);
}

struct C0Row {
  int n;
  double s_m, c0, tau0;
};

// Largest double root of the profile numerator, mpmath findroot on (phibar, phibar') at 40 digits.
inline constexpr C0Row kC0Table[] = {
    {1, -0.5, -0.06949912595693960633225616424049304952648, 9.291502622129181181003231507278520851422},
    {1, -1.0, -0.2251482265544137786674043037115209775203, 5.162277660168379331998893544432718533719},
    {1, -2.0, -0.6666666666666666666666666666666666666667, 3.0},
    {1, -5.0, -2.446032070103133019417231414969611282319, 1.566190378969060094174830575509116615304},
    {2, -0.5, -0.1098839865745261084231642078405993846428, 4.861036294385479209276248525439677526374},
    {2, -1.0, -0.2979354133736671805734063301851735120512, 3.256011142003926498621965004961411289224},
    {2, -2.0, -0.7813838953769223145853286298832702765826, 2.178112117252203660554388914468919103208},
    {3, -0.5, -0.1425646950051217380878411246882263325258, 3.268089529537052905188713469367408594733},
    {3, -1.0, -0.3558597130896005663433405989227776821203, 2.386720607925695057006344265923108551947},
    {3, -2.0, -0.8743919962026763707494201669439500447349, 1.720872702230193268894664038939947737830},
    {4, -0.5, -0.1694935983863950293672532264978117396040, 2.463874885133855720683176928517385051958},
    {4, -1.0, -0.4033516251932227361091304649757386923816, 1.891738967576116937209616481437375096124},
    {4, -2.0, -0.9517373035619143395668859637192303356548, 1.429184249338069041645653631129573179128},
};

// n = 1, S = -2: phi = 2 tau (tau - 3)^2 / (9 (1 + tau)), tau0 = 3, reference point 3/2.
namespace s2 {
inline constexpr double kTau0 = 3.0;
inline constexpr double kTauRef = 1.5;
inline double phi(double tau) { return 2.0 * tau * (tau - 3.0) * (tau - 3.0) / (9.0 * (1.0 + tau)); }
inline double t(double tau) {
  const double d = 3.0 - tau;
  return 0.5 * std::log(tau / d) + 6.0 / d - 4.0;
}
inline double g(double tau) { return -3.0 * std::log(tau) + 12.0 * std::log(3.0 - tau) - 9.0 * std::log(1.5); }

// int_0^3 (1 + tau) e^{-2 t - 10 g} dtau (a = 1, k = 10).
inline constexpr double kBandA1K10 = 3.707905953160096094897996216830960740084e+98;
// a = 5, k = 100: critical point and log of 2 pi int e^{E} dt.
inline constexpr double kTauA5K100 = 2.949917587667360342522393359818831437967;
inline constexpr double kLogIA5K100 = 3101.539707504028292479677470980806815588;
}  // namespace s2

// Composite Simpson with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
