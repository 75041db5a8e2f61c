#include <doctest.h>

#include <cmath>

#include "calabi/errors.hpp"
#include "calabi/transforms.hpp"
#include "oracles.hpp"

using namespace calabi;

TEST_SUITE("transforms") {
  TEST_CASE("Chebyshev series and its antiderivative") {
    const auto s = ChebyshevSeries::fit([](double x) { return std::exp(x); }, -1.0, 2.0);
    CHECK(s(0.5) == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
    const auto a = s.integral(0.0);
    CHECK(a(2.0) == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-15));
    CHECK(a(0.0) == doctest::Approx(0.0));
  }

  TEST_CASE("pole coefficients for n = 1, S = -2") {
    const CoordinateChart chart(MomentumProfile({1, -2.0}));
    const auto& p = chart.poles();
    CHECK(p.p_t == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(p.q_t == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(p.r_t == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(p.p_g == doctest::Approx(-3.0).epsilon(1e-13));
    CHECK(p.q_g == doctest::Approx(12.0).epsilon(1e-13));
  }

  TEST_CASE("chart against closed forms") {
    const CoordinateChart chart(MomentumProfile({1, -2.0}));
    CHECK(chart.tau_ref() == doctest::Approx(oracle::s2::kTauRef));
    for (double tau : {1e-8, 1e-3, 0.4, 1.5, 2.2, 2.999, 3.0 - 1e-9}) {
      CAPTURE(tau);
      CHECK(chart.t_of_tau(tau) == doctest::Approx(oracle::s2::t(tau)).epsilon(1e-13).scale(1.0));
      CHECK(chart.g_of_tau(tau) == doctest::Approx(oracle::s2::g(tau)).epsilon(1e-13).scale(1.0));
    }
  }

  TEST_CASE("chart against Simpson for higher n") {
    for (int n = 2; n <= 4; ++n) {
      const MomentumProfile mp({n, -1.0});
      const CoordinateChart chart(mp);
      const double ref = chart.tau_ref();
      for (double u : {0.2, 0.8}) {
        const double tau = u * mp.tau0();
        const double t = oracle::simpson([&](double x) { return 1.0 / mp.phi(x); }, ref, tau, 200000);
        const double g =
            oracle::simpson([&](double x) { return 2.0 * (x - mp.tau0()) / mp.phi(x); }, ref, tau, 200000);
        CHECK(chart.t_of_tau(tau) == doctest::Approx(t).epsilon(1e-10));
        CHECK(chart.g_of_tau(tau) == doctest::Approx(g).epsilon(1e-10));
        CHECK(chart.t_direct(tau) == doctest::Approx(t).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("inverse map round trip, including deep into both ends") {
    const CoordinateChart chart(MomentumProfile({2, -1.0}));
    for (double t : {-30.0, -3.0, 0.0, 5.0, 1e3, 1e6}) {
      CAPTURE(t);
      const auto [tau, delta] = chart.tau_delta_of_t(t);
      CHECK(tau + delta == doctest::Approx(chart.tau0()).epsilon(1e-15));
      CHECK(chart.t_pair(tau, delta) == doctest::Approx(t).epsilon(1e-12).scale(1.0));
    }
    CHECK(chart.tau_of_t(0.0) == doctest::Approx(chart.tau_ref()).epsilon(1e-14));
  }

  TEST_CASE("t increases and g is convex in t") {
    const CoordinateChart chart(MomentumProfile({1, -1.0}));
    double prev_t = -1e300, prev_slope = -1e300;
    for (int j = 1; j < 50; ++j) {
      const double tau = chart.tau0() * j / 50.0;
      const double t = chart.t_of_tau(tau);
      CHECK(t > prev_t);
      const double slope = 2.0 * (tau - chart.tau0());  // dg/dt
      CHECK(slope > prev_slope);
      prev_t = t;
      prev_slope = slope;
    }
  }

  TEST_CASE("Poincare-type fiber end") {
    for (double s : {-1.0, -2.0}) {
      const CoordinateChart chart(MomentumProfile({1, s}));
      const auto pc = poincare_check(chart);
      CHECK(pc.record.pass);
      CHECK(pc.limit == doctest::Approx(1.0 / chart.profile().eta2_at_tau0()));
    }
  }

  TEST_CASE("gauge: a different reference point shifts t and g by constants") {
    const MomentumProfile mp({2, -1.0});
    const CoordinateChart a(mp), b(mp, 0.3 * mp.tau0());
    const double mid = 0.5 * mp.tau0();
    const double dt = b.t_of_tau(mid) - a.t_of_tau(mid), dg = b.g_of_tau(mid) - a.g_of_tau(mid);
    CHECK(b.t_of_tau(b.tau_ref()) == doctest::Approx(0.0).scale(1.0));
    CHECK(b.g_of_tau(b.tau_ref()) == doctest::Approx(0.0).scale(1.0));
    for (double u : {1e-4, 0.1, 0.7, 0.999}) {
      const double tau = u * mp.tau0();
      CHECK(b.t_of_tau(tau) - a.t_of_tau(tau) == doctest::Approx(dt).epsilon(1e-12).scale(1.0));
      CHECK(b.g_of_tau(tau) - a.g_of_tau(tau) == doctest::Approx(dg).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("domain") {
    const CoordinateChart chart(MomentumProfile({1, -2.0}));
    CHECK_THROWS_AS(chart.t_of_tau(0.0), DomainError);
    CHECK_THROWS_AS(chart.t_of_tau(3.0), DomainError);
    CHECK_THROWS_AS(chart.g_of_tau(-1.0), DomainError);
  }
}
