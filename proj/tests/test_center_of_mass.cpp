#include <doctest.h>

#include <cmath>
#include <vector>

#include "calabi/center_of_mass.hpp"
#include "calabi/errors.hpp"
#include "calabi/riemann_roch.hpp"

using namespace calabi;

TEST_SUITE("center_of_mass") {
  TEST_CASE("Bergman surrogate") {
    const BergmanSurrogate s(1, -2.0, 100.0, 3.0);
    CHECK(s.big_n == doctest::Approx(400.0));
    CHECK(std::exp(s.log_rho(1.0)) == doctest::Approx(399.0 * (1.0 - 1.0 / 399.0)).epsilon(1e-14));
    CHECK(s.ratio(1.0, 2.0) == doctest::Approx(397.0 / 398.0).epsilon(1e-14));
    CHECK(mu_d_band1(s) == doctest::Approx(399.0 / 398.0).epsilon(1e-14));
  }

  TEST_CASE("two bands: the CP1 calibration gives one half each") {
    const BergmanSurrogate s(1, -2.0, 100.0, 3.0);
    for (double gap : {0.0, 3.0, -40.0}) {
      const BandSeries series(s, {0.0, gap});
      CHECK(mu_fiber(series, 1) == doctest::Approx(0.5).epsilon(1e-10));
      CHECK(mu_fiber(series, 2) == doctest::Approx(0.5).epsilon(1e-10));
    }
  }

  TEST_CASE("total fiber mass is the number of bands minus one") {
    const BergmanSurrogate s(1, -1.0, 50.0, 2.0);
    std::vector<double> log_i;
    for (int b = 1; b <= 12; ++b) log_i.push_back(0.3 * b * b - 2.0 * b);  // convex
    const BandSeries series(s, log_i);
    double total = 0.0;
    for (long a = 1; a <= series.bands(); ++a) total += mu_fiber(series, a);
    CHECK(total == doctest::Approx(11.0).epsilon(1e-10));
  }

  TEST_CASE("band statistics") {
    const BergmanSurrogate s(1, -1.0, 50.0, 2.0);
    const BandSeries series(s, {0.0, 1.0, 4.0, 9.0});
    for (double u : {-10.0, 0.0, 2.5, 12.0}) {
      double z[4], m = -1e300;
      for (long b = 1; b <= 4; ++b) m = std::max(m, z[b - 1] = series.z(b, u));
      double sum = 0.0, mean = 0.0, sq = 0.0;
      for (long b = 1; b <= 4; ++b) {
        const double w = std::exp(z[b - 1] - m);
        sum += w;
        mean += (b - 1) * w;
        sq += (b - 1.0) * (b - 1.0) * w;
      }
      mean /= sum;
      const auto st = series.stats(u);
      CHECK(st.log_partition == doctest::Approx(m + std::log(sum)).epsilon(1e-14));
      CHECK(st.mean == doctest::Approx(mean).epsilon(1e-13));
      CHECK(st.var == doctest::Approx(sq / sum - mean * mean).epsilon(1e-10).scale(1e-3));
      CHECK(series.z(series.dominant(u), u) == doctest::Approx(m));
    }
  }

  TEST_CASE("band sum grid") {
    const BergmanSurrogate s(1, -1.0, 50.0, 2.0);
    const BandSeries series(s, {0.0, 1.0, 4.0, 9.0});
    const auto bs = band_sum(series, 2, 3.0);
    CHECK(bs.u.size() == bs.log_f.size());
    CHECK(bs.u.size() == 6 * 64 + 1);
    for (std::size_t i = 0; i < bs.u.size(); ++i) CHECK(bs.log_f[i] >= 0.0);
  }

  TEST_CASE("Fubini-Study integrals") {
    for (double aa : {1.0, 10.0, 1e3}) CHECK(two_term_integral(aa) == doctest::Approx(0.5).epsilon(1e-12));
    const auto tt = three_term_integral(1.0, 1e-6);
    CHECK(tt.quadrature == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(three_term_integral(1.0, 0.5), InvalidInput);
    CHECK_THROWS_AS(two_term_integral(-1.0), InvalidInput);
  }

  TEST_CASE("outside value and regimes") {
    CHECK(mu_outside(-2.0 / 3.0, 400.0) == doctest::Approx(1.0 + 1.0 / 1200.0).epsilon(1e-15));
    // k = 400: sqrt k / (4 log k) < 1, so no band is inside.
    CHECK(classify(1.0, 400.0, 3.0) == Regime::Neck);
    CHECK(classify(479.0, 400.0, 3.0) == Regime::Neck);
    CHECK(classify(480.0, 400.0, 3.0) == Regime::Outside);
    CHECK(classify(1181.0, 400.0, 3.0) == Regime::DeepOutside);
    CHECK(classify(1.0, 1e6, 3.0) == Regime::Inside);
    CHECK(regime_name(Regime::DeepOutside) == "deep-outside");
  }

  TEST_CASE("exact balance gives zero energy") {
    auto gd = curve_geometry(2, 2, 5.0);
    gd.tau0_ratio = std::pair{5LL, 1LL};
    const double k = 20.0;
    const auto m = band_multiplicities(gd, k);
    const auto vol = volumes(gd, k);
    const double v = (vol.vol_lhat + 0.5 * vol.vol_d) / dim_hk(gd, k);
    std::vector<BandMu> bands;
    for (std::size_t i = 0; i < m.size(); ++i) {
      BandMu b;
      b.a = static_cast<long>(i + 1);
      b.multiplicity = m[i];
      b.mu_d = i == 0 ? 1.25 : 0.0;
      b.mu = v - 0.5 * b.mu_d;
      bands.push_back(b);
    }
    const auto e = assemble_energy(bands, gd, k, -0.2);
    CHECK(e.v == doctest::Approx(v).epsilon(1e-15));
    CHECK(e.diag_energy < 1e-24 * e.dim_hk);
    CHECK(std::abs(e.trace_residual) < 1e-10 * e.dim_hk);
    CHECK(e.modeled_offdiag == doctest::Approx(e.dim_hk * e.dim_hk / (k * k * k * k)));
    CHECK_THROWS_AS(assemble_energy(bands, gd, k, -0.2, 0.0), InvalidInput);
  }

  TEST_CASE("lambda = 2/3 compensates the first band") {
    // (1/2) + (1/2) mu_D with mu_D -> 1 equals 1 + (1/2) 0.
    const BergmanSurrogate s(1, -1.0, 400.0, 5.16227766016838);
    CHECK(0.5 + 0.5 * mu_d_band1(s) == doctest::Approx(1.0).epsilon(10.0 / 400.0));
  }
}
