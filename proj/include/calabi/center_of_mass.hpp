#pragma once

#include <string>
#include <vector>

#include "calabi/numerics.hpp"
#include "calabi/record.hpp"
#include "calabi/riemann_roch.hpp"

namespace calabi {

// Band densities rho_a = (N - a)^n [1 + S / (2 (N - a))] with N = k (1 + tau0).
struct BergmanSurrogate {
  int n = 1;
  double s_m = -1.0;
  double k = 1.0;
  double tau0 = 0.0;
  double big_n = 0.0;

  BergmanSurrogate(int n, double s_m, double k, double tau0);
  double log_rho(double a) const;
  // rho_b / rho_a
  double ratio(double a, double b) const;
};

/// The family of band weights pi_b(u) = e^{z_b(u)} / sum_c e^{z_c(u)} with
/// z_b(u) = log rho_b - log I_b + (b - 1) u, u = log |z|^2.
///
/// z_b is concave in b because log I_b is convex, so at each u the sum is
/// dominated by a contiguous run of bands around the argmax; terms more than
/// 60 below the maximum are dropped.
class BandSeries {
 public:
  BandSeries(const BergmanSurrogate& surrogate, std::vector<double> log_i);

  long bands() const { return static_cast<long>(level_.size()); }
  double level(long b) const { return level_[static_cast<std::size_t>(b - 1)]; }
  double z(long b, double u) const { return level(b) + static_cast<double>(b - 1) * u; }
  // u at which z_b = z_{b+1}.
  double crossing(long b) const { return level(b) - level(b + 1); }
  long dominant(double u) const;

  struct Stats {
    double log_partition = 0.0;
    double mean = 0.0;  // E[b - 1]
    double var = 0.0;
  };
  Stats stats(double u) const;
  double log_weight(long b, double u) const { return z(b, u) - stats(u).log_partition; }

  // log F_a(e^u) = log sum_b e^{z_b(u) - z_a(u)}; convex in u.
  double log_f(long a, double u) const { return stats(u).log_partition - z(a, u); }
  // Minimizer of log_f for 1 < a < bands; the crossing next to a for the end bands.
  double center(long a) const;

 private:
  std::vector<double> level_;
};

struct BandSum {
  long a = 0;
  double u_center = 0.0;
  std::vector<double> u;
  std::vector<double> log_f;
};
// Samples log F_a on [center - half_width, center + half_width] at points_per_unit.
BandSum band_sum(const BandSeries& series, long a, double half_width, int points_per_unit = 64);

// Fiber part of the diagonal entry: int pi_a(u) Var_pi(u) du.
// Normalized so that the two-band model 1 + x gives 1/2 per band.
double mu_fiber(const BandSeries& series, long a, double rel_tol = numerics::kDefaultRelTol);

struct ThreeTermResult {
  double quadrature = 0.0;
  double printed_closed_form = 0.0;  // reported for reference only
};
// Middle-term weight for Q(x) = 1 + aa x + bb x^2; requires aa > 0, 0 < bb < aa^2 / 4.
ThreeTermResult three_term_integral(double aa, double bb);
// Constant-term weight for Q(x) = 1 + aa x.
double two_term_integral(double aa);

// 1 - c0 / (2k), the diagonal value away from the neck.
double mu_outside(double c0, double k);
// Per-entry D contribution of band 1: (N - 1)^n / rho_1.
double mu_d_band1(const BergmanSurrogate& surrogate);

enum class Regime { Inside, Neck, Outside, DeepOutside };
Regime classify(double a, double k, double tau0);
std::string regime_name(Regime r);

struct BandMu {
  long a = 0;
  double multiplicity = 0.0;
  double mu_fiber = 0.0;
  double mu = 0.0;  // value used in the assembly
  double mu_d = 0.0;
  Regime regime = Regime::Inside;
};

struct EnergySummary {
  double k = 0.0;
  double dim_hk = 0.0;
  double diag_energy = 0.0;
  double trace_residual = 0.0;
  double modeled_offdiag = 0.0;
  double v = 0.0;
  double sigma = 0.0;
  double c0 = 0.0;
  double energy_per_dim() const { return diag_energy / dim_hk; }
};

/// Diagonal balancing energy sum_a m_a (mu_a + w mu_{D,a} - v)^2, w = (1 - lambda) / lambda,
/// v = (Vol Lhat + w Vol D) / dim. The off-diagonal term dim^2 / k^4 is reported separately.
EnergySummary assemble_energy(const std::vector<BandMu>& bands, const GeometryData& gd, double k, double c0,
                              double lambda = 2.0 / 3.0);

// Shifted log F_a against the Gaussian theta profile with coefficient k eta(tau0) / a^2
// on |u| <= (log k)^2; residual is max |difference| / max(1, |theta profile|).
VerificationRecord h_profile_check(const BandSeries& series, long a, double k, double eta_tau0);

}  // namespace calabi
