#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "calabi/numerics.hpp"

using namespace calabi;
using namespace calabi::numerics;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("polynomial and smooth integrands") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::cos(x); }, 0.0, kPi / 2).value ==
          doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("infinite ranges") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK(integrate(gauss, -kInf, kInf).value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(integrate(gauss, 1.0, kInf).value == doctest::Approx(0.5 * std::sqrt(kPi) * std::erfc(1.0)).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(x); }, -kInf, 0.0).value == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("breakpoints resolve a kink") {
    QuadratureOptions o;
    o.rel_tol = 1e-13;
    o.breakpoints = {0.3};
    const auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, o);
    CHECK(r.value == doctest::Approx(0.29).epsilon(1e-14));
    CHECK(r.evaluations <= 60);
  }

  TEST_CASE("reversed and empty intervals") {
    CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
    CHECK(integrate([](double x) { return x; }, 2.0, 2.0).value == 0.0);
  }

  TEST_CASE("NaN integrand reports the abscissa") {
    bool thrown = false;
    try {
      integrate([](double x) { return x > 0.5 ? std::nan("") : 1.0; }, 0.0, 1.0);
    } catch (const QuadratureError& e) {
      thrown = true;
      CHECK(e.abscissa() > 0.5);
    }
    CHECK(thrown);
  }

  TEST_CASE("invalid tolerance") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, -1.0), InvalidInput);
  }

  TEST_CASE("log-domain integral far beyond double range") {
    auto logf = [](double x) { return 1000.0 - x * x; };
    const auto r = integrate_logdomain(logf, -50.0, 50.0);
    CHECK(r.log_value == doctest::Approx(1000.0 + 0.5 * std::log(kPi)).epsilon(1e-14));
    QuadratureOptions o;
    const auto p = integrate_logdomain(logf, -50.0, 50.0, 0.0, o);
    CHECK(p.log_value == doctest::Approx(r.log_value).epsilon(1e-14));
    CHECK(p.log_scale == doctest::Approx(1000.0));
  }

  TEST_CASE("Brent root") {
    const auto r = find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-15);
    CHECK(r.root == doctest::Approx(0.7390851332151607).epsilon(1e-15));
    CHECK(r.residual < 1e-15);
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), NumericalError);
  }

  TEST_CASE("golden-section maximum") {
    const auto s = sup_search([](double x) { return -(x - 2.0) * (x - 2.0) + 3.0; }, 0.0, 5.0, 1e-12);
    CHECK(s.argmax == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(s.value == doctest::Approx(3.0).epsilon(1e-14));
  }

  TEST_CASE("finite differences of sin") {
    auto f = [](double x) { return std::sin(x); };
    const double x = 0.3;
    const double exact[] = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
    for (int m = 1; m <= 4; ++m) {
      CHECK(finite_diff(f, x, m, 1e-2) == doctest::Approx(exact[m - 1]).epsilon(1e-3));
      CHECK(richardson_diff(f, x, m, 0.1) == doctest::Approx(exact[m - 1]).epsilon(1e-5));
    }
    CHECK_THROWS_AS(finite_diff(f, x, 5, 0.1), InvalidInput);
  }

  TEST_CASE("log-sum-exp") {
    const std::vector<double> xs{1000.0, 1000.0};
    CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
    const std::vector<double> ys{-1e308, 0.0};
    CHECK(log_sum_exp(ys) == doctest::Approx(0.0));
  }
}
