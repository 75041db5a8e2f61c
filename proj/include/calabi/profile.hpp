#pragma once

#include "calabi/polynomial.hpp"
#include "calabi/record.hpp"

namespace calabi {

struct ProfileParams {
  int n = 1;
  double s_m = -1.0;

  // Throws InvalidInput unless n >= 1 and s_m < 0.
  void validate() const;
};

// The numerator phibar(tau) = (1+tau)^n phi(tau) / 2 is affine in c:
// phibar = base + c * slope, both of degree n + 2 with zero constant term.
struct NumeratorSplit {
  Polynomial base;
  Polynomial slope;

  Polynomial at(double c) const { return base + c * slope; }
};

// Coefficients are formed in exact rational arithmetic and rounded once.
NumeratorSplit numerator_split(const ProfileParams& p);

double eval_phi(const ProfileParams& p, double c, double tau);

// c0 = S - 4/3 + (2/3) sqrt(4 - 6 S) and tau0 = 3 (S - c0) / (2 c0), valid for n = 1.
double c0_closed_form_n1(double s_m);
double tau0_closed_form_n1(double s_m);

struct C0Solution {
  double c0 = 0.0;
  double tau0 = 0.0;
  int bisection_steps = 0;
};

// Largest c with phi(.; c) >= 0 on [0, inf), and the double root tau0 of phi at that c.
C0Solution solve_c0(const ProfileParams& p);

class MomentumProfile {
 public:
  // Profile at the completeness constant c0; the factorization is available.
  explicit MomentumProfile(const ProfileParams& p);
  // Profile at an arbitrary c; factorization queries throw.
  MomentumProfile(const ProfileParams& p, double c);

  const ProfileParams& params() const { return params_; }
  int n() const { return params_.n; }
  double c() const { return c_; }
  double c0() const { return c0_; }
  double tau0() const { return tau0_; }
  bool at_c0() const { return at_c0_; }

  const Polynomial& numerator() const { return phibar_; }
  // phibar = x (x - tau0)^2 f(x); cofactor() is x f(x).
  const Polynomial& f_poly() const;
  const Polynomial& cofactor() const;
  // Remainders left by the two divisions by (x - tau0); zero in exact arithmetic.
  double deflation_residual() const { return deflation_residual_; }

  double phi(double tau) const;
  double dphi(double tau) const;
  double d2phi(double tau) const;
  // phi evaluated from the pair (tau, tau0 - tau), accurate when tau is near tau0.
  double phi_pair(double tau, double delta) const;
  double dphi_pair(double tau, double delta) const;
  double d2phi_pair(double tau, double delta) const;

  double f(double tau) const;
  double eta2(double tau) const;
  double eta(double tau) const { return 1.0 / eta2(tau); }
  double eta2_at_tau0() const { return eta2(tau0_); }

 private:
  void require_factored(const char* what) const;
  void build_factorization();

  ProfileParams params_;
  double c_ = 0.0;
  double c0_ = 0.0;
  double tau0_ = 0.0;
  bool at_c0_ = false;
  Polynomial phibar_, dphibar_, d2phibar_;
  Polynomial f_, cof_, dcof_, d2cof_;
  double deflation_residual_ = 0.0;
};

// Minimum over a grid of f(tau) = phibar(tau) / (tau (tau - tau0)^2) on (0, tau0).
// Points within a relative 1e-3 of either end use the polynomial cofactor instead.
struct FactorCheck {
  double min_f = 0.0;
  double argmin = 0.0;
  double phi_at_tau0 = 0.0;
  double dphi_at_tau0 = 0.0;
  VerificationRecord record;
};
FactorCheck factor_check(const MomentumProfile& mp, int grid_size);

}  // namespace calabi
