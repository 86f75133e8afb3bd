#pragma once

#include <vector>

namespace restartar {

/// Dawson function D(x) = e^{-x^2} int_0^x e^{t^2} dt, absolute error below 1e-14.
double dawson(double x);

/// Coefficients c_{k,j}, j = 0..k, with h^{(k)}(s) = e^{-s} sum_j c_{k,j} s^{-1/2-j}
/// for h(s) = e^{-s}/sqrt(s).
std::vector<double> h_derivative_coefficients(int k);

/// k-th derivative of h(s) = e^{-s}/sqrt(s). Throws a domain error for s <= 0.
double h_derivative(int k, double s);

/// Same as h_derivative with precomputed coefficients.
double h_derivative(const std::vector<double>& coefficients, double s);

/// e^{s} h^{(k)}(s), free of underflow for large s.
double h_derivative_scaled(const std::vector<double>& coefficients, double s);

/// Volume of the unit ball in R^d; unit_ball_volume(0) = 1.
double unit_ball_volume(int d);

/// n!! with 0!! = (-1)!! = 1.
double double_factorial(int n);

double normal_cdf(double x);

}  // namespace restartar
