#pragma once

#include <optional>
#include <string>
#include <vector>

#include "calabi/profile.hpp"
#include "calabi/record.hpp"

namespace calabi {

// Discrete data of the divisor D and the fiber area tau0.
// ln = L^n on D, lk = L^{n-1}.K_D. For curves (n = 1), ln = degree and lk = 2 genus - 2.
struct GeometryData {
  int n = 1;
  long long ln = 1;
  long long lk = 0;
  double tau0 = 0.0;
  // Exact fiber area p/q; when present, n = 1 quantities are computed in rational arithmetic.
  std::optional<std::pair<long long, long long>> tau0_ratio;

  bool exact() const { return tau0_ratio.has_value(); }
  void validate() const;
};

GeometryData curve_geometry(int genus, int degree, double tau0);
// Parses "p/q", an integer, or a terminating decimal into an exact ratio.
std::pair<long long, long long> parse_ratio(const std::string& text);

// Curvature normalization that closes the c0/2 = -sigma identity: S = -n lk / ln.
double smcurvature(const GeometryData& gd);

struct ChiCoefficients {
  double a0 = 0.0;
  double a1 = 0.0;
};
ChiCoefficients chi_coefficients(const GeometryData& gd);

struct Volumes {
  double vol_lhat = 0.0;
  double vol_d = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
};
Volumes volumes(const GeometryData& gd, double k);

double sigma(const GeometryData& gd);

// |c0/2 + sigma| with c0 from the profile and sigma from the geometry.
VerificationRecord sigma_identity(const GeometryData& gd, const MomentumProfile& mp);

// Number of bands floor(k tau0); exact when the ratio is known.
long band_count(const GeometryData& gd, double k);

// m_a for a = 1..band_count. Curves use Riemann-Roch on D; n >= 2 uses the leading term.
std::vector<double> band_multiplicities(const GeometryData& gd, double k);

// Sum of multiplicities in exact curve mode, otherwise (a0 k^{n+1} + a1 k^n) / (n+1)!.
double dim_hk(const GeometryData& gd, double k);

struct DimensionReport {
  double k = 0.0;
  bool exact = false;
  double dim_hk = 0.0;
  ChiCoefficients chi;
  Volumes vol;
  double sigma = 0.0;
  std::vector<double> multiplicities;
};
DimensionReport dimension_report(const GeometryData& gd, double k);

}  // namespace calabi
