#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "restartar/chain.hpp"
#include "restartar/limit_law.hpp"
#include "restartar/model.hpp"
#include "restartar/rng.hpp"

namespace restartar {

/// Model families of the worked examples.
ModelFamily example_family(const std::string& name);
std::vector<std::string> preset_names();

struct Scenario {
  std::string name;
  std::string prediction;  // normal-limit, half-normal-limit, degenerate-zero, ...
  ModelFamily family;
  std::vector<std::int64_t> m_grid;
  std::int64_t samples = 100'000;
  double ks_threshold = 0.02;
  StationaryOptions options;
};

std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name);

/// Limit predicted for a stationary scenario, recomputed from the live
/// noise covariance and drift.
LimitLaw predicted_law(const Scenario& s);

/// Runs a scenario and returns its report body (per-m estimates, checks and an
/// overall "verdict": "pass" | "fail").
nlohmann::json run_scenario(const Scenario& s, const RandomStream& stream, int threads = 1);

struct GammaSearchOptions {
  std::vector<double> targets;
  std::vector<std::int64_t> m_grid{10'000};
  double tolerance = 0.02;
  double c_max = 0.75;
  int replicas = 16;
  std::int64_t budget = 0;  // steps per evaluation; 0 selects max(1e6, 4e4 m)
  int threads = 1;
};

struct GammaSearchEntry {
  std::int64_t m = 0;
  double target = 0.0;
  bool ok = false;
  double c = 0.0;
  double gamma = 0.0;
  double achieved = 0.0;       // common-random-number estimate at c
  double achieved_stderr = 0.0;
  double validated = 0.0;      // fresh-stream estimate at c
  double validated_stderr = 0.0;
  int evaluations = 0;
  int monotonicity_violations = 0;
  std::string error;
};

/// Per-m bisection over c = gamma_m / beta_m so that the estimated E Y^(m)
/// meets each target.
std::vector<GammaSearchEntry> gamma_search(const ModelFamily& base, const GammaSearchOptions& options,
                                           const RandomStream& stream);

/// Largest target the search accepts: sqrt(E xi^2)/sqrt(pi a).
double gamma_search_upper_target(const ModelFamily& base);

struct ProbeOptions {
  double epsilon = 0.01;
  std::int64_t horizon = 100'000;
  std::int64_t replicas = 2'000;
  std::vector<std::int64_t> m_grid{100, 1'000, 10'000};
  int threads = 1;
};

struct ProbeReport {
  std::string verdict;  // divergence-consistent | tau-bounded | inconclusive
  double rho = 0.0;
  std::vector<std::int64_t> horizons;
  std::vector<double> truncated_means;
  std::vector<double> truncated_stderrs;
  std::vector<double> censored_fractions;
  double growth_exponent = 0.0;
  TauStats walk;                  // survival of the random-walk hitting time
  std::vector<TauStats> tau_by_m;  // direct estimates when alpha_m does not tend to 1
};

ProbeReport tau_divergence_probe(const ModelFamily& f, const ProbeOptions& options, const RandomStream& stream);

struct NonHittingReport {
  double alpha = 0.0;
  double gamma = 0.0;
  std::int64_t steps = 0;
  double min_abs = 0.0;  // min |Z_t| over 1 <= t <= steps
  double bound = 0.0;    // (1 - 2 alpha)/(1 - alpha)
  bool hit = false;      // some |Z_t| <= gamma
  bool pass = false;     // min_abs >= bound - 1e-12
};

/// Z_{t+1} = alpha Z_t + xi_{t+1} with Rademacher xi, Z_0 = 0.
NonHittingReport non_hitting_counterexample(double alpha, double gamma, std::int64_t steps, RandomStream& stream);

nlohmann::json to_json(const TauStats& stats);
nlohmann::json to_json(const ProbeReport& report);
nlohmann::json to_json(const GammaSearchEntry& entry);
nlohmann::json to_json(const NonHittingReport& report);
nlohmann::json to_json(const ValidationVerdict& verdict);

}  // namespace restartar
