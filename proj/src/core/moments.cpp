#include "restartar/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "restartar/error.hpp"

namespace restartar {

MomentTable moment_recursion(const LimitLaw& law, std::span<const double> u, int K) {
  if (K < 2) fail(ErrorKind::InvalidArgument, "moment order K must be >= 2");
  if (static_cast<int>(u.size()) != law.dimension()) fail(ErrorKind::InvalidArgument, "u has wrong dimension");
  const Eigen::Map<const Eigen::VectorXd> uv(u.data(), static_cast<Eigen::Index>(u.size()));
  const double sigma_u = uv.dot(law.sigma() * uv);
  const double a = law.drift();

  MomentTable table;
  table.direction.assign(u.begin(), u.end());
  table.source = "analytic-recursion";
  table.values.assign(K + 1, 0.0);
  table.stderrs.assign(K + 1, 0.0);
  table.values[0] = 1.0;
  table.values[1] = uv.dot(law.mu());
  table.values[2] = law.p() * sigma_u / (2.0 * a);
  for (int k = 3; k <= K; ++k) table.values[k] = (k - 1) / (2.0 * a) * sigma_u * table.values[k - 2];
  return table;
}

InequalityVerdict moment_inequality_check(double mu1, double mu2, double s) {
  if (!(s > 0.0)) fail(ErrorKind::Domain, "s must be positive");
  const double slack = std::abs(mu1) - std::numbers::sqrt2 / std::sqrt(std::numbers::pi * s) * mu2;
  return {slack, slack <= 1e-12 * std::max(1.0, std::abs(mu1))};
}

MomentTable empirical_moments(std::span<const double> samples, std::span<const double> u, int K, int blocks) {
  const std::size_t d = u.size();
  if (d == 0 || samples.size() % d != 0) fail(ErrorKind::InvalidArgument, "samples do not match the direction");
  const std::size_t n = samples.size() / d;
  if (n < 2) fail(ErrorKind::InvalidArgument, "need at least two samples");
  if (K < 0) fail(ErrorKind::InvalidArgument, "moment order K must be >= 0");
  const std::size_t b = std::min<std::size_t>(static_cast<std::size_t>(std::max(blocks, 2)), n);

  // Per-block power sums in fixed block order.
  std::vector<std::vector<double>> sums(b, std::vector<double>(K + 1, 0.0));
  std::vector<double> counts(b, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t block = i * b / n;
    double proj = 0.0;
    for (std::size_t j = 0; j < d; ++j) proj += u[j] * samples[i * d + j];
    double power = 1.0;
    for (int k = 0; k <= K; ++k) {
      sums[block][k] += power;
      power *= proj;
    }
    counts[block] += 1.0;
  }

  MomentTable table;
  table.direction.assign(u.begin(), u.end());
  table.source = "empirical";
  table.n = n;
  table.values.assign(K + 1, 0.0);
  table.stderrs.assign(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < b; ++i) total += sums[i][k];
    table.values[k] = total / static_cast<double>(n);
    if (k == 0) continue;
    std::vector<double> loo(b);
    double mean = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      loo[i] = (total - sums[i][k]) / (static_cast<double>(n) - counts[i]);
      mean += loo[i];
    }
    mean /= static_cast<double>(b);
    double var = 0.0;
    for (double v : loo) var += (v - mean) * (v - mean);
    table.stderrs[k] = std::sqrt(var * (static_cast<double>(b) - 1.0) / static_cast<double>(b));
  }
  table.values[0] = 1.0;
  return table;
}

}  // namespace restartar
