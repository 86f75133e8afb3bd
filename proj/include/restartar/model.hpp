#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "restartar/noise.hpp"
#include "restartar/rng.hpp"

namespace restartar {

struct AlphaMoments {
  double mean;
  double second;
};

/// Law of the AR coefficient alpha_m, given for every index m.
class AlphaLaw {
 public:
  enum class Kind { HeavyTraffic, TwoPointShifted, FiniteDiscrete };

  /// alpha_m = 1 - a/m, no randomness.
  static AlphaLaw heavy_traffic(double a);
  /// alpha_m = alpha~ - shift/m with alpha~ two-point.
  static AlphaLaw two_point_shifted(std::vector<double> values, std::vector<double> probs, double shift);
  /// alpha_m independent of m.
  static AlphaLaw finite_discrete(std::vector<double> values, std::vector<double> probs);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double drift() const { return drift_; }
  [[nodiscard]] double shift() const { return shift_; }
  [[nodiscard]] const std::vector<double>& base_values() const { return values_; }
  [[nodiscard]] const std::vector<double>& base_probabilities() const { return probs_; }

  /// Support points of alpha_m with their probabilities.
  [[nodiscard]] std::vector<double> values_at(std::int64_t m) const;
  [[nodiscard]] const std::vector<double>& probabilities() const { return probs_; }
  [[nodiscard]] AlphaMoments moments(std::int64_t m) const;
  [[nodiscard]] bool is_deterministic() const { return values_.size() == 1; }
  /// True if alpha_m -> 1 in probability as m grows.
  [[nodiscard]] bool tends_to_one() const;

 private:
  AlphaLaw(Kind kind, std::vector<double> values, std::vector<double> probs)
      : kind_(kind), values_(std::move(values)), probs_(std::move(probs)) {}

  Kind kind_;
  std::vector<double> values_;
  std::vector<double> probs_;
  double drift_ = 0.0;
  double shift_ = 0.0;
};

/// alpha_m frozen at one m, ready for fast sampling.
class AlphaSampler {
 public:
  AlphaSampler(const AlphaLaw& law, std::int64_t m);
  double draw(RandomStream& stream) const;
  [[nodiscard]] bool deterministic() const { return values_.size() == 1; }

 private:
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

AlphaMoments alpha_moments(const AlphaLaw& law, std::int64_t m);

/// beta_m or gamma_m as a function of m.
class ScalarSchedule {
 public:
  enum class Kind { InvSqrtM, ScaledInvSqrtM, Power, ExplicitTable };

  static ScalarSchedule inv_sqrt_m();
  static ScalarSchedule scaled_inv_sqrt_m(double c);
  static ScalarSchedule power(double c, double exponent);
  static ScalarSchedule explicit_table(std::map<std::int64_t, double> table);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double value(std::int64_t m) const;
  [[nodiscard]] double coefficient() const { return c_; }
  [[nodiscard]] double exponent() const { return exponent_; }
  [[nodiscard]] const std::map<std::int64_t, double>& table() const { return table_; }
  /// (c, e) with value(m) = c m^e, absent for tables.
  [[nodiscard]] std::optional<std::pair<double, double>> power_form() const;
  /// m value(m)^2 -> 1 by construction.
  [[nodiscard]] bool certified_inv_sqrt() const;

 private:
  ScalarSchedule(Kind kind, double c, double exponent) : kind_(kind), c_(c), exponent_(exponent) {}

  Kind kind_;
  double c_;
  double exponent_;
  std::map<std::int64_t, double> table_;
};

double schedule_value(const ScalarSchedule& s, std::int64_t m);

/// lim gamma_m / beta_m from the schedules' power forms: nullopt if the
/// schedules give no closed form, +inf if the ratio diverges.
std::optional<double> asymptotic_ratio(const ScalarSchedule& gamma, const ScalarSchedule& beta);

/// The restart set A. Membership treats A as open.
class RestartRegion {
 public:
  enum class Kind { Ball, Interval, CenteredBox };

  static RestartRegion ball(int dimension, double radius);
  static RestartRegion interval(double lo, double hi);
  static RestartRegion centered_box(std::vector<double> half_widths);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int dimension() const { return dimension_; }
  [[nodiscard]] double inner_radius() const { return inner_; }
  [[nodiscard]] double outer_radius() const { return outer_; }
  [[nodiscard]] const std::vector<double>& parameters() const { return params_; }

  /// x in gamma A.
  [[nodiscard]] bool contains_scaled(std::span<const double> x, double gamma) const;
  [[nodiscard]] bool contains(std::span<const double> x) const { return contains_scaled(x, 1.0); }
  /// x in rho A + B(0, eps).
  [[nodiscard]] bool contains_inflated(std::span<const double> x, double rho, double eps) const;

 private:
  RestartRegion(Kind kind, int dimension, std::vector<double> params);

  Kind kind_;
  int dimension_;
  std::vector<double> params_;  // radius | (lo, hi) | half-widths
  double inner_ = 0.0;
  double outer_ = 0.0;
};

struct ModelFamily {
  int dimension = 1;
  double drift = 1.0;
  AlphaLaw alpha = AlphaLaw::heavy_traffic(1.0);
  ScalarSchedule beta = ScalarSchedule::inv_sqrt_m();
  ScalarSchedule gamma = ScalarSchedule::inv_sqrt_m();
  NoiseLaw noise = NoiseLaw::standard_gaussian(1);
  RestartRegion region = RestartRegion::interval(-0.5, 0.5);
};

struct ValidationItem {
  std::string name;
  bool pass;
  std::string witness;
};

struct ValidationVerdict {
  std::int64_t m;
  std::vector<ValidationItem> items;
  [[nodiscard]] bool pass() const;
};

ValidationVerdict validate_family(const ModelFamily& f, std::int64_t m);

}  // namespace restartar
