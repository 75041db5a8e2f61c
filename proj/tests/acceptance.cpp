// Acceptance criteria, one PASS/FAIL line each. Tolerances are fixed here.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "calabi/center_of_mass.hpp"
#include "calabi/cli.hpp"
#include "calabi/fiber_integrals.hpp"
#include "calabi/profile.hpp"
#include "calabi/riemann_roch.hpp"
#include "calabi/sweep.hpp"
#include "oracles.hpp"

using namespace calabi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < time_limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %s: %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs,
              time_limit);
  std::fflush(stdout);
}

const CoordinateChart& chart_s2() {
  static const CoordinateChart chart(MomentumProfile({1, -2.0}));
  return chart;
}

std::string run_cli(std::vector<const char*> args) {
  args.insert(args.begin(), "calabi");
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(args.size()), args.data(), out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

}  // namespace

int main() {
  criterion(1, "curve closed form for c0 and tau0", 1.0, [] {
    double worst = 0.0;
    for (double s : {-0.5, -1.0, -2.0, -5.0}) {
      const auto sol = solve_c0({1, s});
      worst = std::max({worst, std::abs(sol.c0 - oracle::c0_n1(s)), std::abs(sol.tau0 - oracle::tau0_n1(s))});
    }
    return Outcome{worst <= 1e-9, fmt("max deviation %.3g <= 1e-9", worst)};
  });

  criterion(2, "double-root factorization, n = 1..4", 5.0, [] {
    double min_f = INFINITY, root = 0.0;
    for (int n = 1; n <= 4; ++n)
      for (double s : {-0.5, -2.0}) {
        const auto fc = factor_check(MomentumProfile({n, s}), 10000);
        min_f = std::min(min_f, fc.min_f);
        root = std::max({root, std::abs(fc.phi_at_tau0), std::abs(fc.dphi_at_tau0)});
      }
    return Outcome{min_f > 0.0 && root < 1e-8, fmt("min f = %.4g > 0, max |phi|,|phi'| at tau0 = %.3g < 1e-8", min_f, root)};
  });

  criterion(3, "c0/2 = -sigma on (g,d) = (2,2) and (3,4)", 1.0, [] {
    double worst = 0.0;
    for (auto [g, d] : {std::pair{2, 2}, std::pair{3, 4}}) {
      auto gd = curve_geometry(g, d, 0.0);
      const MomentumProfile mp({1, smcurvature(gd)});
      gd.tau0 = mp.tau0();
      worst = std::max(worst, sigma_identity(gd, mp).residual);
    }
    return Outcome{worst < 1e-8, fmt("max |c0/2 + sigma| = %.3g < 1e-8", worst)};
  });

  criterion(4, "Gaussian moment table", 5.0, [] {
    const auto rec = gaussian_table_check();
    return Outcome{rec.residual < 1e-12, fmt("max relative residual %.3g < 1e-12", rec.residual)};
  });

  criterion(5, "Laplace error ratio k = 200 -> 400 in [0.3, 0.8]", 30.0, [] {
    double lo = INFINITY, hi = -INFINITY;
    for (double a : {2.0, 3.0, 5.0}) {
      const double r = compute_band(chart_s2(), a, 400.0).laplace_rel_err() /
                       compute_band(chart_s2(), a, 200.0).laplace_rel_err();
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return Outcome{lo >= 0.3 && hi <= 0.8, fmt("ratios in [%.4f, %.4f]", lo, hi)};
  });

  criterion(6, "critical-point law for a <= sqrt k", 30.0, [] {
    double worst = 0.0;
    for (double k : {200.0, 400.0})
      for (double a = 1.0; a <= std::sqrt(k); a += 1.0) {
        const auto cp = critical_point(chart_s2(), a, k);
        worst = std::max(worst, std::abs(cp.delta_a - a / k) * k * k / a);
      }
    return Outcome{worst <= 10.0, fmt("max |(tau0 - tau_a) - a/k| k^2/a = %.4g <= 10", worst)};
  });

  criterion(7, "neck coefficients against finite differences, k = 400", 60.0, [] {
    double e1 = 0.0, e2 = 0.0, klo = INFINITY, khi = -INFINITY;
    for (double a0 : {10.0, 20.0}) {  // ceil(sqrt k / 2), ceil(sqrt k)
      const auto nc = neck_coefficients(chart_s2(), 400.0, a0);
      const auto fd = neck_finite_diff(chart_s2(), 400.0, a0);
      e1 = std::max(e1, std::abs(nc.c1 / fd.c1 - 1.0));
      e2 = std::max(e2, std::abs(nc.c2 / fd.c2 - 1.0));
      const double kurt = nc.i4 / (3.0 * nc.i2 * nc.i2);
      klo = std::min(klo, kurt);
      khi = std::max(khi, kurt);
    }
    const bool ok = e1 <= 0.005 && e2 <= 0.05 && klo >= 0.9 && khi <= 1.1;
    return Outcome{ok, fmt("c1 rel %.2e, c2 rel %.2e, ", e1, e2) + fmt("kurtosis ratio in [%.5f, %.5f]", klo, khi)};
  });

  criterion(8, "three-term and two-term integrals", 10.0, [] {
    const double three = three_term_integral(1.0, 1e-6).quadrature;
    double two = 0.0;
    for (double aa : {1.0, 10.0, 1e3}) two = std::max(two, std::abs(two_term_integral(aa) - 0.5));
    return Outcome{three >= 0.99 && three <= 1.01 && two <= 1e-12,
                   fmt("three-term %.6f in [0.99, 1.01], max |two-term - 1/2| = %.2g", three, two)};
  });

  criterion(9, "mu regimes at k = 400, S = -2", 300.0, [] {
    const double k = 400.0;
    const auto table = sweep::mu_table(chart_s2(), k, std::nullopt, 8);
    auto mu = [&](long a) { return table.mu[static_cast<std::size_t>(a - 1)].mu_fiber; };
    const double d1 = std::abs(mu(1) - 0.5) * k;
    double dn = 0.0;
    for (long a : {3L, 5L, 10L}) dn = std::max(dn, std::abs(mu(a) - 1.0) * k);
    const double c0 = chart_s2().profile().c0();
    const long boundary = static_cast<long>(std::ceil(4.0 * std::sqrt(k) * std::log(k)));
    const double db = std::abs(mu(boundary) - mu_outside(c0, k)) * k / std::abs(c0);
    return Outcome{d1 <= 10.0 && dn <= 10.0 && db <= 10.0,
                   fmt("|mu1 - 1/2| k = %.2g, max |mu_a - 1| k = %.2g, ", d1, dn) +
                       fmt("boundary gap k/|c0| = %.4f at a = %.0f (all <= 10)", db, static_cast<double>(boundary))};
  });

  // Criteria 10 and 11 share the canonical-geometry sweeps.
  std::vector<EnergySummary> energies;
  auto canonical = [&]() -> const std::vector<EnergySummary>& {
    if (energies.empty()) {
      auto gd = curve_geometry(2, 2, 0.0);
      const MomentumProfile mp({1, smcurvature(gd)});
      gd.tau0 = mp.tau0();
      const CoordinateChart chart(mp);
      for (double k : {100.0, 200.0, 400.0})
        energies.push_back(assemble_energy(sweep::mu_table(chart, k, gd, 8).mu, gd, k, mp.c0()));
    }
    return energies;
  };

  criterion(10, "sigma cancellation |mu_outside - v| k^2", 120.0, [&] {
    const auto& e = canonical();
    auto scaled = [](const EnergySummary& s) { return std::abs(mu_outside(s.c0, s.k) - s.v) * s.k * s.k; };
    const double ratio = scaled(e.back()) / scaled(e.front());
    return Outcome{ratio <= 2.0, fmt("k=100: %.6f, k=400: %.6f, ratio %.4f <= 2", scaled(e.front()), scaled(e.back()), ratio)};
  });

  criterion(11, "energy / dim strictly decreasing over k = 100, 200, 400", 120.0, [&] {
    const auto& e = canonical();
    const bool ok = e[1].energy_per_dim() < e[0].energy_per_dim() && e[2].energy_per_dim() < e[1].energy_per_dim();
    return Outcome{ok, fmt("%.4e > %.4e > %.4e", e[0].energy_per_dim(), e[1].energy_per_dim(), e[2].energy_per_dim())};
  });

  criterion(12, "verify report byte-identical across worker counts", 120.0, [] {
    const auto a = run_cli({"verify", "--threads", "1", "--seed", "7", "--format", "json"});
    const auto b = run_cli({"verify", "--threads", "4", "--seed", "7", "--format", "json"});
    const auto c = run_cli({"verify", "--threads", "4", "--seed", "7", "--format", "json"});
    const bool ok = a == b && b == c && a.rfind("0\n", 0) == 0;
    return Outcome{ok, fmt("%.0f bytes, identical: ", static_cast<double>(a.size())) + (a == b && b == c ? "yes" : "no") +
                           ", exit " + a.substr(0, a.find('\n'))};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
