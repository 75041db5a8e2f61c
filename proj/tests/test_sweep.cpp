#include <doctest.h>

#include <cmath>
#include <cstring>

#include "calabi/errors.hpp"
#include "calabi/sweep.hpp"

using namespace calabi;

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("parallel bands reproduce the serial reference bit for bit") {
    const CoordinateChart chart(MomentumProfile({1, -2.0}));
    const auto ser = sweep::bands_serial(chart, 60.0, 1, 180);
    for (int threads : {1, 2, 5}) {
      const auto par = sweep::bands_parallel(chart, 60.0, 1, 180, threads);
      REQUIRE(par.size() == ser.size());
      for (std::size_t i = 0; i < ser.size(); ++i) {
        CHECK(same_bits(par[i].log_i_exact, ser[i].log_i_exact));
        CHECK(same_bits(par[i].tau_a, ser[i].tau_a));
      }
    }
  }

  TEST_CASE("parallel mu reproduces the serial reference") {
    const CoordinateChart chart(MomentumProfile({1, -2.0}));
    const auto bands = sweep::bands_serial(chart, 60.0, 1, 180);
    std::vector<double> log_i;
    for (const auto& b : bands) log_i.push_back(b.log_i_exact);
    const BandSeries series(BergmanSurrogate(1, -2.0, 60.0, 3.0), log_i);
    const auto ser = sweep::mu_serial(series);
    const auto par = sweep::mu_parallel(series, 3);
    REQUIRE(ser.size() == par.size());
    for (std::size_t i = 0; i < ser.size(); ++i) CHECK(same_bits(ser[i], par[i]));
  }

  TEST_CASE("mu table") {
    const MomentumProfile mp({1, -1.0});
    const CoordinateChart chart(mp);
    const auto bare = sweep::mu_table(chart, 30.0, std::nullopt, 2);
    CHECK(static_cast<long>(bare.mu.size()) == sweep::band_total(30.0, mp.tau0()));
    CHECK(std::isnan(bare.mu[0].multiplicity));
    CHECK(bare.mu[0].mu_d > 0.0);
    CHECK(bare.mu[1].mu_d == 0.0);
    const auto geo = sweep::mu_table(chart, 30.0, curve_geometry(2, 2, mp.tau0()), 1);
    CHECK(geo.mu[0].multiplicity == doctest::Approx((30.0 * (1.0 + mp.tau0()) - 1.0) * 2.0 - 1.0));
    for (std::size_t i = 0; i < geo.mu.size(); ++i) CHECK(same_bits(geo.mu[i].mu_fiber, bare.mu[i].mu_fiber));
  }

  TEST_CASE("band count") {
    CHECK(sweep::band_total(400.0, 3.0) == 1200);
    CHECK(sweep::band_total(0.1, 3.0) == 0);
  }

  TEST_CASE("errors") {
    const CoordinateChart chart(MomentumProfile({1, -2.0}));
    CHECK_THROWS_AS(sweep::bands_parallel(chart, 60.0, 5, 2, 2), InvalidInput);
    CHECK_THROWS_AS(sweep::bands_parallel(chart, 60.0, 1, 2, 0), InvalidInput);
    // Band 181 does not exist at k = 60; the error surfaces from the worker.
    CHECK_THROWS_AS(sweep::bands_parallel(chart, 60.0, 170, 181, 3), InvalidInput);
    CHECK_THROWS_AS(sweep::mu_table(chart, 0.1, std::nullopt, 1), InvalidInput);
  }
}
