#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "restartar/limit_law.hpp"

namespace restartar {

/// Empirical CDF of a sample, right-continuous.
class EcdfView {
 public:
  explicit EcdfView(std::span<const double> sample);
  double operator()(double x) const;
  /// F(x-).
  [[nodiscard]] double left_limit(double x) const;
  [[nodiscard]] const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct CdfJump {
  double location;
  double mass;
};

/// A candidate CDF (right-continuous) with its jumps listed explicitly,
/// sorted by location.
struct CandidateCdf {
  std::function<double(double)> cdf;
  std::vector<CdfJump> jumps;

  [[nodiscard]] double left_limit(double x) const;
};

/// sup_x |F_n(x) - F(x)|, checking both one-sided limits at sample points and jumps.
double ks_distance(std::span<const double> sample, const CandidateCdf& candidate);

/// Two-sample statistic sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// CDF of <v, Y> for a projection law, atom at 0 included.
CandidateCdf mixture_cdf(const ProjectionLaw& law);

CandidateCdf normal_cdf_candidate(double mean, double sd);

/// The empirical CDF of a sample as a candidate (jumps at every sample point).
CandidateCdf ecdf_candidate(std::span<const double> sample);

std::vector<std::complex<double>> empirical_cf(std::span<const double> sample, std::span<const double> t);

}  // namespace restartar
