#include "restartar/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "restartar/error.hpp"

namespace restartar {
namespace {

void check_law(const std::vector<double>& values, const std::vector<double>& probs) {
  if (values.empty() || values.size() != probs.size())
    fail(ErrorKind::InvalidArgument, "alpha law needs matching values and probabilities");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) fail(ErrorKind::InvalidArgument, "probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "probabilities must sum to 1");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::InvalidArgument, "alpha values must be positive");
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

}  // namespace

AlphaLaw AlphaLaw::heavy_traffic(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorKind::InvalidArgument, "drift a must be positive");
  AlphaLaw law(Kind::HeavyTraffic, {1.0}, {1.0});
  law.drift_ = a;
  law.shift_ = a;
  return law;
}

AlphaLaw AlphaLaw::two_point_shifted(std::vector<double> values, std::vector<double> probs, double shift) {
  if (values.size() != 2) fail(ErrorKind::InvalidArgument, "two-point alpha law needs exactly two values");
  check_law(values, probs);
  if (!std::isfinite(shift)) fail(ErrorKind::InvalidArgument, "alpha shift must be finite");
  AlphaLaw law(Kind::TwoPointShifted, std::move(values), std::move(probs));
  law.shift_ = shift;
  law.drift_ = shift;
  return law;
}

AlphaLaw AlphaLaw::finite_discrete(std::vector<double> values, std::vector<double> probs) {
  check_law(values, probs);
  return AlphaLaw(Kind::FiniteDiscrete, std::move(values), std::move(probs));
}

std::vector<double> AlphaLaw::values_at(std::int64_t m) const {
  if (m < 1) fail(ErrorKind::InvalidArgument, "m must be >= 1");
  std::vector<double> out = values_;
  const double offset = shift_ / static_cast<double>(m);
  if (kind_ != Kind::FiniteDiscrete)
    for (auto& v : out) v -= offset;
  return out;
}

AlphaMoments AlphaLaw::moments(std::int64_t m) const {
  const auto values = values_at(m);
  AlphaMoments out{0.0, 0.0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.mean += probs_[i] * values[i];
    out.second += probs_[i] * values[i] * values[i];
  }
  return out;
}

bool AlphaLaw::tends_to_one() const { return kind_ == Kind::HeavyTraffic; }

AlphaSampler::AlphaSampler(const AlphaLaw& law, std::int64_t m) : values_(law.values_at(m)) {
  cumulative_.resize(values_.size());
  std::partial_sum(law.probabilities().begin(), law.probabilities().end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

double AlphaSampler::draw(RandomStream& stream) const {
  if (values_.size() == 1) return values_[0];
  const double u = stream.uniform();
  std::size_t i = 0;
  while (i + 1 < values_.size() && u >= cumulative_[i]) ++i;
  return values_[i];
}

AlphaMoments alpha_moments(const AlphaLaw& law, std::int64_t m) { return law.moments(m); }

ScalarSchedule ScalarSchedule::inv_sqrt_m() { return ScalarSchedule(Kind::InvSqrtM, 1.0, -0.5); }

ScalarSchedule ScalarSchedule::scaled_inv_sqrt_m(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidArgument, "schedule coefficient must be positive");
  return ScalarSchedule(Kind::ScaledInvSqrtM, c, -0.5);
}

ScalarSchedule ScalarSchedule::power(double c, double exponent) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidArgument, "schedule coefficient must be positive");
  if (!std::isfinite(exponent)) fail(ErrorKind::InvalidArgument, "schedule exponent must be finite");
  return ScalarSchedule(Kind::Power, c, exponent);
}

ScalarSchedule ScalarSchedule::explicit_table(std::map<std::int64_t, double> table) {
  if (table.empty()) fail(ErrorKind::InvalidArgument, "schedule table is empty");
  for (const auto& [m, v] : table) {
    if (m < 1) fail(ErrorKind::InvalidArgument, "schedule table keys must be >= 1");
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::InvalidArgument, "schedule values must be positive");
  }
  ScalarSchedule s(Kind::ExplicitTable, 0.0, 0.0);
  s.table_ = std::move(table);
  return s;
}

double ScalarSchedule::value(std::int64_t m) const {
  if (m < 1) fail(ErrorKind::InvalidArgument, "m must be >= 1");
  switch (kind_) {
    case Kind::InvSqrtM:
      return 1.0 / std::sqrt(static_cast<double>(m));
    case Kind::ScaledInvSqrtM:
      return c_ / std::sqrt(static_cast<double>(m));
    case Kind::Power:
      return c_ * std::pow(static_cast<double>(m), exponent_);
    case Kind::ExplicitTable: {
      const auto it = table_.find(m);
      if (it == table_.end()) fail(ErrorKind::Domain, "schedule undefined at m = " + std::to_string(m));
      return it->second;
    }
  }
  return 0.0;
}

std::optional<std::pair<double, double>> ScalarSchedule::power_form() const {
  if (kind_ == Kind::ExplicitTable) return std::nullopt;
  return std::make_pair(c_, exponent_);
}

bool ScalarSchedule::certified_inv_sqrt() const {
  return kind_ != Kind::ExplicitTable && c_ == 1.0 && exponent_ == -0.5;
}

double schedule_value(const ScalarSchedule& s, std::int64_t m) { return s.value(m); }

std::optional<double> asymptotic_ratio(const ScalarSchedule& gamma, const ScalarSchedule& beta) {
  const auto g = gamma.power_form();
  const auto b = beta.power_form();
  if (!g || !b) return std::nullopt;
  const double de = g->second - b->second;
  if (std::abs(de) <= 1e-12) return g->first / b->first;
  return de < 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

RestartRegion::RestartRegion(Kind kind, int dimension, std::vector<double> params)
    : kind_(kind), dimension_(dimension), params_(std::move(params)) {}

RestartRegion RestartRegion::ball(int dimension, double radius) {
  if (dimension < 1) fail(ErrorKind::InvalidArgument, "region dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) fail(ErrorKind::InvalidArgument, "ball radius must be positive");
  RestartRegion r(Kind::Ball, dimension, {radius});
  r.inner_ = r.outer_ = radius;
  return r;
}

RestartRegion RestartRegion::interval(double lo, double hi) {
  if (!(lo < 0.0 && 0.0 < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorKind::InvalidArgument, "interval region needs lo < 0 < hi");
  RestartRegion r(Kind::Interval, 1, {lo, hi});
  r.inner_ = std::min(-lo, hi);
  r.outer_ = std::max(-lo, hi);
  return r;
}

RestartRegion RestartRegion::centered_box(std::vector<double> half_widths) {
  if (half_widths.empty()) fail(ErrorKind::InvalidArgument, "box region needs at least one half-width");
  double norm2 = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (double h : half_widths) {
    if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::InvalidArgument, "box half-widths must be positive");
    norm2 += h * h;
    smallest = std::min(smallest, h);
  }
  const int d = static_cast<int>(half_widths.size());
  RestartRegion r(Kind::CenteredBox, d, std::move(half_widths));
  r.inner_ = smallest;
  r.outer_ = std::sqrt(norm2);
  return r;
}

bool RestartRegion::contains_scaled(std::span<const double> x, double gamma) const {
  switch (kind_) {
    case Kind::Ball: {
      double norm2 = 0.0;
      for (double v : x) norm2 += v * v;
      const double r = gamma * params_[0];
      return norm2 < r * r;
    }
    case Kind::Interval:
      return gamma * params_[0] < x[0] && x[0] < gamma * params_[1];
    case Kind::CenteredBox:
      for (std::size_t j = 0; j < x.size(); ++j)
        if (!(std::abs(x[j]) < gamma * params_[j])) return false;
      return true;
  }
  return false;
}

bool RestartRegion::contains_inflated(std::span<const double> x, double rho, double eps) const {
  switch (kind_) {
    case Kind::Ball: {
      double norm2 = 0.0;
      for (double v : x) norm2 += v * v;
      return std::sqrt(norm2) < rho * params_[0] + eps;
    }
    case Kind::Interval:
      return rho * params_[0] - eps < x[0] && x[0] < rho * params_[1] + eps;
    case Kind::CenteredBox: {
      double dist2 = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double excess = std::max(std::abs(x[j]) - rho * params_[j], 0.0);
        dist2 += excess * excess;
      }
      return dist2 < eps * eps;
    }
  }
  return false;
}

bool ValidationVerdict::pass() const {
  return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.pass; });
}

ValidationVerdict validate_family(const ModelFamily& f, std::int64_t m) {
  ValidationVerdict verdict{m, {}};
  auto add = [&](std::string name, bool pass, std::string witness) {
    verdict.items.push_back({std::move(name), pass, std::move(witness)});
  };
  if (m < 1) {
    add("index", false, "m = " + std::to_string(m) + " < 1");
    return verdict;
  }

  const auto values = f.alpha.values_at(m);
  const auto& probs = f.alpha.probabilities();
  const auto mom = f.alpha.moments(m);
  const double lowest = *std::min_element(values.begin(), values.end());
  add("alpha-support-positive", lowest > 0.0,
      "min support point " + fmt(lowest) + ", E alpha_m = " + fmt(mom.mean));
  add("alpha-mean-below-one", mom.mean < 1.0, "E alpha_m = " + fmt(mom.mean));

  const double d = f.dimension;
  const double threshold = d / (d + 1.0);
  double near_one = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] >= threshold && values[i] < 1.0) near_one += probs[i];
  add("alpha-mass-near-one", near_one > 0.0,
      "P(alpha_m in [" + fmt(threshold) + ", 1)) = " + fmt(near_one));

  add("noise-dimension", f.noise.dimension() == f.dimension,
      "noise d = " + std::to_string(f.noise.dimension()) + ", model d = " + std::to_string(f.dimension));
  add("region-dimension", f.region.dimension() == f.dimension,
      "region d = " + std::to_string(f.region.dimension()) + ", model d = " + std::to_string(f.dimension));

  try {
    const auto sigma = f.noise.covariance();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    add("covariance-full-rank", true, "min eigenvalue " + fmt(eig.eigenvalues().minCoeff()));
  } catch (const Error& e) {
    add("covariance-full-rank", false, e.what());
  }

  const double inner = f.region.inner_radius();
  const double outer = f.region.outer_radius();
  add("region-sandwich", inner > 0.0 && inner <= outer,
      "inner radius " + fmt(inner) + ", outer radius " + fmt(outer));

  try {
    const double beta = f.beta.value(m);
    const double gamma = f.gamma.value(m);
    add("schedules-positive", beta > 0.0 && gamma > 0.0, "beta_m = " + fmt(beta) + ", gamma_m = " + fmt(gamma));
  } catch (const Error& e) {
    add("schedules-positive", false, e.what());
  }
  return verdict;
}

}  // namespace restartar
