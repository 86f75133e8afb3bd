#include "restartar/special.hpp"

#include <cmath>
#include <numbers>

#include "restartar/error.hpp"

namespace restartar {

double dawson(double x) {
  const double ax = std::abs(x);
  double result;
  if (ax < 6.0) {
    // e^{-x^2} sum x^{2n+1} / (n! (2n+1)); every term positive.
    const double x2 = ax * ax;
    double power = ax;  // x^{2n+1}/n!
    double sum = ax;
    for (int n = 1; n < 400; ++n) {
      power *= x2 / n;
      const double term = power / (2 * n + 1);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    result = std::exp(-x2) * sum;
  } else {
    // 1/(2x) sum (2k-1)!!/(2x^2)^k, truncated at the smallest term.
    const double inv = 1.0 / (2.0 * ax * ax);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      const double next = term * (2 * k - 1) * inv;
      if (next >= term) break;
      term = next;
      sum += term;
      if (term < sum * 1e-17) break;
    }
    result = sum / (2.0 * ax);
  }
  return x < 0.0 ? -result : result;
}

std::vector<double> h_derivative_coefficients(int k) {
  if (k < 0) fail(ErrorKind::Domain, "derivative order must be >= 0");
  std::vector<double> c{1.0};
  for (int order = 0; order < k; ++order) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < next.size(); ++j) {
      if (j < c.size()) next[j] -= c[j];
      if (j >= 1) next[j] -= (static_cast<double>(j) - 0.5) * c[j - 1];
    }
    c = std::move(next);
  }
  return c;
}

double h_derivative_scaled(const std::vector<double>& coefficients, double s) {
  if (!(s > 0.0)) fail(ErrorKind::Domain, "h_derivative needs s > 0");
  const double inv = 1.0 / s;
  double power = 1.0 / std::sqrt(s);
  double sum = 0.0;
  for (double c : coefficients) {
    sum += c * power;
    power *= inv;
  }
  return sum;
}

double h_derivative(const std::vector<double>& coefficients, double s) {
  return std::exp(-s) * h_derivative_scaled(coefficients, s);
}

double h_derivative(int k, double s) { return h_derivative(h_derivative_coefficients(k), s); }

double unit_ball_volume(int d) {
  if (d < 0) fail(ErrorKind::Domain, "dimension must be >= 0");
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double double_factorial(int n) {
  if (n < -1) fail(ErrorKind::Domain, "double factorial needs n >= -1");
  double out = 1.0;
  for (int j = n; j > 1; j -= 2) out *= j;
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace restartar
