#include "restartar/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "restartar/error.hpp"
#include "restartar/special.hpp"

namespace restartar {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

}  // namespace

LimitLaw::LimitLaw(double a, Eigen::MatrixXd sigma, Eigen::VectorXd mu, double p)
    : a_(a), p_(p), sigma_(std::move(sigma)), mu_(std::move(mu)) {
  const auto d = mu_.size();
  if (d < 1) fail(ErrorKind::InvalidArgument, "limit law dimension must be >= 1");
  if (!(a_ > 0.0) || !std::isfinite(a_)) fail(ErrorKind::InvalidArgument, "drift a must be positive");
  if (!(p_ >= 0.0 && p_ <= 1.0)) fail(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
  if (sigma_.rows() != d || sigma_.cols() != d) fail(ErrorKind::InvalidArgument, "Sigma must be d x d");
  if (!mu_.allFinite() || !sigma_.allFinite()) fail(ErrorKind::InvalidArgument, "limit law parameters must be finite");
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * sigma_.cwiseAbs().maxCoeff())
    fail(ErrorKind::InvalidArgument, "Sigma must be symmetric");

  llt_.compute(sigma_);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma_, Eigen::EigenvaluesOnly);
  if (llt_.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 1e-12 * eig.eigenvalues().maxCoeff()))
    fail(ErrorKind::InvalidArgument, "Sigma must be positive definite");

  sigma_inv_mu_ = llt_.solve(mu_);
  mu_quad_ = mu_.dot(sigma_inv_mu_);
  const Eigen::MatrixXd l = llt_.matrixL();
  sqrt_det_ = l.diagonal().prod();

  if (kPi * a_ * mu_quad_ > p_ * p_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "infeasible limit law: feasibility ratio sqrt(pi a mu' Sigma^-1 mu) / p = ";
    if (p_ > 0.0)
      msg << std::sqrt(kPi * a_ * mu_quad_) / p_;
    else
      msg << "inf";
    msg << " > 1; violating direction v* = Sigma^-1 mu = (";
    for (Eigen::Index j = 0; j < d; ++j) msg << (j ? ", " : "") << sigma_inv_mu_[j];
    msg << ")";
    fail(ErrorKind::Infeasible, msg.str());
  }

  const int dim = static_cast<int>(d);
  const int k = dim % 2 == 1 ? (dim - 1) / 2 : dim / 2;
  h_coeffs_ = h_derivative_coefficients(k);
  if (p_ > 0.0) {
    if (dim % 2 == 1) {
      tilde_prefactor_ = std::pow(-2.0, k) * std::pow(a_, 0.5 * (dim + 2)) /
                         (sqrt_det_ * unit_ball_volume(dim - 1) * double_factorial(dim - 1) * p_);
    } else {
      tilde_prefactor_ = std::pow(-2.0, k) * std::pow(a_, 0.5 * (dim + 3)) /
                         (sqrt_det_ * unit_ball_volume(dim) * double_factorial(dim) * p_);
    }
  }
}

double LimitLaw::feasibility_ratio() const {
  if (p_ == 0.0) return 0.0;
  return std::sqrt(kPi * a_ * mu_quad_) / p_;
}

std::complex<double> LimitLaw::cf(std::span<const double> u) const {
  if (static_cast<Eigen::Index>(u.size()) != mu_.size()) fail(ErrorKind::InvalidArgument, "u has wrong dimension");
  const auto uv = as_vector(u);
  const double quad = uv.dot(sigma_ * uv);
  if (quad == 0.0) return {1.0, 0.0};
  const double t = std::sqrt(quad / (2.0 * a_));
  const double real = p_ * std::exp(-0.5 * t * t);
  const double imag = 2.0 * std::sqrt(a_) * uv.dot(mu_) / std::sqrt(quad) * dawson(t / std::numbers::sqrt2);
  return {(1.0 - p_) + real, imag};
}

std::complex<double> LimitLaw::cf_continuous(std::span<const double> u) const {
  if (p_ == 0.0) fail(ErrorKind::Domain, "limit is the point mass at 0; no continuous part");
  return (cf(u) - std::complex<double>(1.0 - p_, 0.0)) / p_;
}

double LimitLaw::pdf(std::span<const double> x) const {
  if (p_ == 0.0) fail(ErrorKind::Domain, "limit is the point mass at 0; no density");
  const int d = dimension();
  if (static_cast<int>(x.size()) != d) fail(ErrorKind::InvalidArgument, "x has wrong dimension");
  const auto xv = as_vector(x);
  const double q = xv.dot(llt_.solve(xv));
  const double gauss = std::pow(a_ / kPi, 0.5 * d) / sqrt_det_ * std::exp(-a_ * q);

  const double w = sigma_inv_mu_.dot(xv);
  if (w == 0.0 || q <= 0.0) return gauss;

  double shape;
  if (d % 2 == 1) {
    shape = h_derivative(h_coeffs_, a_ * q);
  } else {
    // int_R h^{(k)}(a(q + z^2)) dz with z = sqrt(q) sinh(s), e^{-aq} factored out.
    const double aq = a_ * q;
    const double upper = std::asinh(std::sqrt(50.0 / aq));
    auto integrand = [&](double s) {
      const double c = std::cosh(s);
      const double sh = std::sinh(s);
      return h_derivative_scaled(h_coeffs_, aq * c * c) * std::exp(-aq * sh * sh) * c;
    };
    const double half = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, upper, 15, 1e-14);
    shape = 2.0 * std::sqrt(q) * std::exp(-aq) * half;
  }
  return gauss + tilde_prefactor_ * w * shape;
}

ProjectionLaw LimitLaw::projection(std::span<const double> v) const {
  if (static_cast<Eigen::Index>(v.size()) != mu_.size()) fail(ErrorKind::InvalidArgument, "v has wrong dimension");
  const auto vv = as_vector(v);
  const double quad = vv.dot(sigma_ * vv);
  if (!(quad > 0.0)) fail(ErrorKind::InvalidArgument, "projection direction must be nonzero");
  const double scale = std::sqrt(quad / (2.0 * a_));
  if (p_ == 0.0) return {scale, 0.5, 0.5, 1.0};
  const double plus = std::clamp(0.5 + std::sqrt(kPi * a_) * vv.dot(mu_) / (2.0 * p_ * std::sqrt(quad)), 0.0, 1.0);
  return {scale, plus, 1.0 - plus, 1.0 - p_};
}

std::vector<double> LimitLaw::sample_projection(std::span<const double> v, std::size_t n,
                                                RandomStream& stream) const {
  const auto law = projection(v);
  std::vector<double> out(n, 0.0);
  for (auto& y : out) {
    if (law.atom_mass > 0.0 && stream.uniform() < law.atom_mass) continue;
    const double sign = stream.uniform() < law.prob_plus ? 1.0 : -1.0;
    y = sign * law.scale * std::abs(stream.normal());
  }
  return out;
}

LimitLaw make_limit_law(double a, const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu, double p) {
  return LimitLaw(a, sigma, mu, p);
}

LimitLaw no_truncation_law(double a, const Eigen::MatrixXd& sigma) {
  return LimitLaw(a, sigma, Eigen::VectorXd::Zero(sigma.rows()), 1.0);
}

std::complex<double> half_normal_cf(double t) {
  return {std::exp(-0.5 * t * t), 2.0 / std::sqrt(kPi) * dawson(t / std::numbers::sqrt2)};
}

std::complex<double> projection_cf(const ProjectionLaw& law, double t) {
  const double p = 1.0 - law.atom_mass;
  const auto plus = half_normal_cf(law.scale * t);
  const auto minus = half_normal_cf(-law.scale * t);
  return law.atom_mass + p * (law.prob_plus * plus + law.prob_minus * minus);
}

}  // namespace restartar
