#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "restartar/rng.hpp"

namespace restartar {

/// Law of <v, Y> for the limit Y = B1 Z: an atom of mass 1 - p at 0 and, with
/// probability p, scale * B2 * |N| where P(B2 = +1) = prob_plus.
struct ProjectionLaw {
  double scale;
  double prob_plus;
  double prob_minus;
  double atom_mass;
};

/// The limiting law Y = B1 Z with parameters (a, Sigma, mu, p).
///
/// Construction enforces pi a mu' Sigma^{-1} mu <= p^2; with p = 0 this
/// forces mu = 0 and the law is the point mass at the origin.
class LimitLaw {
 public:
  LimitLaw(double a, Eigen::MatrixXd sigma, Eigen::VectorXd mu, double p);

  [[nodiscard]] int dimension() const { return static_cast<int>(mu_.size()); }
  [[nodiscard]] double drift() const { return a_; }
  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] const Eigen::MatrixXd& sigma() const { return sigma_; }
  [[nodiscard]] const Eigen::VectorXd& mu() const { return mu_; }
  /// sqrt(pi a mu' Sigma^{-1} mu) / p; at most 1 for every constructed law.
  [[nodiscard]] double feasibility_ratio() const;

  /// Characteristic function of Y.
  [[nodiscard]] std::complex<double> cf(std::span<const double> u) const;
  /// Characteristic function of the continuous part Z.
  [[nodiscard]] std::complex<double> cf_continuous(std::span<const double> u) const;
  /// Density of Z. Throws if p = 0.
  [[nodiscard]] double pdf(std::span<const double> x) const;

  [[nodiscard]] ProjectionLaw projection(std::span<const double> v) const;
  [[nodiscard]] std::vector<double> sample_projection(std::span<const double> v, std::size_t n,
                                                      RandomStream& stream) const;

 private:
  double a_;
  double p_;
  Eigen::MatrixXd sigma_;
  Eigen::VectorXd mu_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd sigma_inv_mu_;
  double sqrt_det_ = 1.0;
  double mu_quad_ = 0.0;  // mu' Sigma^{-1} mu
  std::vector<double> h_coeffs_;
  double tilde_prefactor_ = 0.0;
};

LimitLaw make_limit_law(double a, const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, double p);

/// N(0, Sigma/(2a)) as a limit law (p = 1, mu = 0).
LimitLaw no_truncation_law(double a, const Eigen::MatrixXd& sigma);

/// CF of |N|: (1 + i sqrt(2/pi) int_0^t e^{x^2/2} dx) e^{-t^2/2}, overflow safe.
std::complex<double> half_normal_cf(double t);

/// CF of <v, Y> assembled from its projection law.
std::complex<double> projection_cf(const ProjectionLaw& law, double t);

}  // namespace restartar
