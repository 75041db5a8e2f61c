#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace calabi {

// Dense real polynomial, coefficients in ascending degree.
struct Polynomial {
  std::vector<double> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool empty() const { return coeffs.empty(); }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs.size() <= 1) return Polynomial{};
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs[i];
    return Polynomial{std::move(d)};
  }

  // Quotient of synthetic division by (x - root); the remainder is returned separately.
  std::pair<Polynomial, double> divide_linear(double root) const {
    if (coeffs.size() <= 1) return {Polynomial{}, coeffs.empty() ? 0.0 : coeffs[0]};
    std::vector<double> q(coeffs.size() - 1);
    double carry = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = coeffs[i] + carry * root;
    }
    return {Polynomial{std::move(q)}, carry};
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
    return Polynomial{std::move(c)};
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return Polynomial{};
    std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return Polynomial{std::move(c)};
  }

  friend Polynomial operator*(double s, const Polynomial& p) {
    Polynomial r = p;
    for (auto& c : r.coeffs) c *= s;
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }
};

// (x - root) and (1 + x)^n as polynomials.
inline Polynomial linear_factor(double root) { return Polynomial{{-root, 1.0}}; }

inline Polynomial one_plus_x_pow(int n) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    for (int i = k; i >= 1; --i) c[i] += c[i - 1];
  return Polynomial{std::move(c)};
}

}  // namespace calabi
