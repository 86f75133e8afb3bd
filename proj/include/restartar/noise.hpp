#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "restartar/rng.hpp"

namespace restartar {

/// Law of the driving noise xi in R^d. Every kind is mean zero by
/// construction and carries its covariance and directional moments in
/// closed form.
class NoiseLaw {
 public:
  enum class Kind { StandardGaussian, UniformInterval, UniformBox, RademacherProduct, FiniteDiscrete };

  static NoiseLaw standard_gaussian(int dimension);
  /// Uniform on (lo, hi); requires lo == -hi.
  static NoiseLaw uniform_interval(double lo, double hi);
  /// Independent uniform coordinates on (-h_i, h_i).
  static NoiseLaw uniform_box(std::vector<double> half_widths);
  static NoiseLaw rademacher_product(int dimension);
  /// Atoms `points[i]` (each of length d) with probabilities `probs[i]`.
  static NoiseLaw finite_discrete(std::vector<std::vector<double>> points, std::vector<double> probs);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int dimension() const { return dimension_; }

  /// One draw written into `out` (length d).
  void draw(RandomStream& stream, std::span<double> out) const;
  /// n draws, row-major n x d.
  [[nodiscard]] std::vector<double> sample(RandomStream& stream, std::size_t n) const;

  /// Sigma = E xi xi^T. Throws if not positive definite.
  [[nodiscard]] Eigen::MatrixXd covariance() const;
  /// E <u, xi>^k, exact.
  [[nodiscard]] double directional_moment(std::span<const double> u, int k) const;

  /// Coordinate-wise support bounds in d = 1 (lo, hi); infinite for Gaussian.
  [[nodiscard]] std::pair<double, double> support_1d() const;
  [[nodiscard]] bool has_density() const;
  [[nodiscard]] double max_norm() const;  // sup ||xi||, infinite for Gaussian

  [[nodiscard]] const std::vector<double>& parameters() const { return params_; }
  [[nodiscard]] const std::vector<std::vector<double>>& points() const { return points_; }
  [[nodiscard]] const std::vector<double>& probabilities() const { return probs_; }

 private:
  NoiseLaw(Kind kind, int dimension) : kind_(kind), dimension_(dimension) {}

  Kind kind_;
  int dimension_;
  std::vector<double> params_;  // (lo, hi) or half-widths
  std::vector<std::vector<double>> points_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

/// E <u, xi>^k for the free-standing call style used by the moments module.
double noise_directional_moment(const NoiseLaw& law, std::span<const double> u, int k);
Eigen::MatrixXd noise_covariance(const NoiseLaw& law);
std::vector<double> sample_noise(const NoiseLaw& law, RandomStream& stream, std::size_t n);

}  // namespace restartar
