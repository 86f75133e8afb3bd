#include "restartar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "restartar/error.hpp"
#include "restartar/special.hpp"

namespace restartar {

EcdfView::EcdfView(std::span<const double> sample) : sorted_(sample.begin(), sample.end()) {
  if (sorted_.empty()) fail(ErrorKind::InvalidArgument, "empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EcdfView::operator()(double x) const {
  const auto k = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

double EcdfView::left_limit(double x) const {
  const auto k = std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_.size());
}

double CandidateCdf::left_limit(double x) const {
  double value = cdf(x);
  auto it = std::lower_bound(jumps.begin(), jumps.end(), x,
                             [](const CdfJump& j, double v) { return j.location < v; });
  for (; it != jumps.end() && it->location == x; ++it) value -= it->mass;
  return std::max(value, 0.0);
}

double ks_distance(std::span<const double> sample, const CandidateCdf& candidate) {
  if (sample.empty()) fail(ErrorKind::InvalidArgument, "empty sample");
  const EcdfView ecdf(sample);
  const auto& xs = ecdf.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double below = static_cast<double>(i) / n;
    const double upto = static_cast<double>(j) / n;
    d = std::max(d, std::abs(upto - candidate.cdf(xs[i])));
    d = std::max(d, std::abs(below - candidate.left_limit(xs[i])));
    i = j;
  }
  for (const auto& jump : candidate.jumps) {
    d = std::max(d, std::abs(ecdf(jump.location) - candidate.cdf(jump.location)));
    d = std::max(d, std::abs(ecdf.left_limit(jump.location) - candidate.left_limit(jump.location)));
  }
  return std::min(d, 1.0);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorKind::InvalidArgument, "empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    const double v = j == y.size() || (i < x.size() && x[i] <= y[j]) ? x[i] : y[j];
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

CandidateCdf mixture_cdf(const ProjectionLaw& law) {
  const double p = 1.0 - law.atom_mass;
  CandidateCdf out;
  out.cdf = [law, p](double x) {
    double cont;
    if (law.scale <= 0.0) {
      cont = x >= 0.0 ? 1.0 : 0.0;
    } else if (x < 0.0) {
      cont = law.prob_minus * 2.0 * normal_cdf(x / law.scale);
    } else {
      cont = law.prob_minus + law.prob_plus * (2.0 * normal_cdf(x / law.scale) - 1.0);
    }
    return (x >= 0.0 ? law.atom_mass : 0.0) + p * cont;
  };
  if (law.atom_mass > 0.0) out.jumps.push_back({0.0, law.atom_mass});
  return out;
}

CandidateCdf normal_cdf_candidate(double mean, double sd) {
  if (!(sd > 0.0)) fail(ErrorKind::InvalidArgument, "standard deviation must be positive");
  return {[mean, sd](double x) { return normal_cdf((x - mean) / sd); }, {}};
}

CandidateCdf ecdf_candidate(std::span<const double> sample) {
  auto view = std::make_shared<EcdfView>(sample);
  CandidateCdf out;
  out.cdf = [view](double x) { return (*view)(x); };
  const auto& xs = view->sorted();
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    out.jumps.push_back({xs[i], static_cast<double>(j - i) / n});
    i = j;
  }
  return out;
}

std::vector<std::complex<double>> empirical_cf(std::span<const double> sample, std::span<const double> t) {
  if (sample.empty()) fail(ErrorKind::InvalidArgument, "empty sample");
  std::vector<std::complex<double>> out;
  out.reserve(t.size());
  const double n = static_cast<double>(sample.size());
  for (double s : t) {
    double re = 0.0, im = 0.0;
    for (double x : sample) {
      re += std::cos(s * x);
      im += std::sin(s * x);
    }
    out.emplace_back(re / n, im / n);
  }
  return out;
}

}  // namespace restartar
