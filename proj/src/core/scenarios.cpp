#include "restartar/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "parallel.hpp"
#include "restartar/error.hpp"
#include "restartar/moments.hpp"
#include "restartar/stats.hpp"

namespace restartar {
namespace {

using nlohmann::json;

constexpr std::uint64_t kValidationTag = 0x56414C4944415445ULL;
constexpr std::uint64_t kProbeTag = 0x50524F4245ULL;

bool close_to(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); }

json check(const std::string& name, bool pass, double value, double threshold, const std::string& relation) {
  return {{"name", name}, {"pass", pass}, {"value", value}, {"threshold", threshold}, {"relation", relation}};
}

std::vector<double> projections(const StationarySample& s) {
  std::vector<double> out(s.states.size() / s.dimension);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.states[i * s.dimension];
  return out;
}

json stationary_entry(const Scenario& s, std::int64_t m, const StationarySample& sample) {
  const auto y = projections(sample);
  const double n = static_cast<double>(y.size());
  double sum = 0.0, sum_abs = 0.0;
  for (double v : y) {
    sum += v;
    sum_abs += std::abs(v);
  }
  const double u = 1.0;
  const auto moments = empirical_moments(y, std::span<const double>(&u, 1), 4);
  json entry{{"m", m},
             {"beta", s.family.beta.value(m)},
             {"gamma", s.family.gamma.value(m)},
             {"samples", y.size()},
             {"thin", sample.thin},
             {"burn_in", sample.burn_in},
             {"steps", sample.steps},
             {"mean", sum / n},
             {"mean_stderr", moments.stderrs[1]},
             {"abs_mean", sum_abs / n},
             {"second_moment", moments.values[2]},
             {"second_moment_stderr", moments.stderrs[2]},
             {"min", *std::min_element(y.begin(), y.end())},
             {"max", *std::max_element(y.begin(), y.end())}};
  if (s.options.mode == StationaryMode::CyclePool) {
    entry["cycles"] = sample.cycles;
    entry["capped_cycles"] = sample.capped_cycles;
    entry["mean_cycle_length"] = sample.mean_cycle_length;
    entry["cycle_length_stderr"] = sample.cycle_length_stderr;
  }
  return entry;
}

// Prop-style configurations accepted by the gamma search, up to a common scale.
void check_search_family(const ModelFamily& f) {
  if (f.dimension != 1) fail(ErrorKind::InvalidArgument, "gamma search needs d = 1");
  if (f.alpha.kind() != AlphaLaw::Kind::HeavyTraffic)
    fail(ErrorKind::InvalidArgument, "gamma search needs the heavy-traffic alpha law");
  if (f.region.kind() != RestartRegion::Kind::Interval)
    fail(ErrorKind::InvalidArgument, "gamma search needs an interval region");
  const auto [slo, shi] = f.noise.support_1d();
  if (!std::isfinite(slo) || !std::isfinite(shi))
    fail(ErrorKind::InvalidArgument, "gamma search needs bounded noise");
  const double lo = f.region.parameters()[0];
  const double hi = f.region.parameters()[1];
  const bool first = close_to(slo, -shi) && close_to(lo, -2.0 * shi) && close_to(hi, shi);
  const bool second = close_to(slo, -0.5 * shi) && close_to(lo, -shi) && close_to(hi, shi);
  if (!first && !second)
    fail(ErrorKind::InvalidArgument,
         "gamma search needs A = s(-2, 1) with noise support s[-1, 1], or A = s(-1, 1) with support s[-1/2, 1]");
}

}  // namespace

ModelFamily example_family(const std::string& name) {
  ModelFamily f;
  f.dimension = 1;
  f.drift = 1.0;
  f.alpha = AlphaLaw::heavy_traffic(1.0);
  f.beta = ScalarSchedule::inv_sqrt_m();
  f.gamma = ScalarSchedule::inv_sqrt_m();
  f.noise = NoiseLaw::uniform_interval(-1.0, 1.0);
  f.region = RestartRegion::interval(-0.5, 0.5);
  if (name == "example-1.1" || name == "no-truncation") return f;
  if (name == "example-1.2") {
    f.region = RestartRegion::interval(-1.0, 0.5);
    return f;
  }
  if (name == "example-2") {
    f.drift = 0.5;
    f.alpha = AlphaLaw::two_point_shifted({1.25, 0.75}, {0.5, 0.5}, 0.5);
    return f;
  }
  if (name == "gamma-search") {
    const double s = std::sqrt(3.0);
    f.noise = NoiseLaw::uniform_interval(-s, s);
    f.region = RestartRegion::interval(-2.0 * s, s);
    f.gamma = ScalarSchedule::scaled_inv_sqrt_m(0.5);
    return f;
  }
  fail(ErrorKind::Config, "unknown model preset \"" + name + "\"");
}

std::vector<std::string> preset_names() {
  return {"example-1.1", "example-1.2", "example-2", "no-truncation", "gamma-search"};
}

std::vector<std::string> scenario_names() {
  return {"example-1.1", "example-1.2", "example-2", "no-truncation", "non-hitting", "tau-divergence", "gamma-search"};
}

Scenario make_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  s.m_grid = {10'000};
  if (name == "example-1.1") {
    s.prediction = "normal-limit";
  } else if (name == "example-1.2") {
    s.prediction = "half-normal-limit";
  } else if (name == "example-2") {
    s.prediction = "degenerate-zero";
    s.m_grid = {100, 1'000, 10'000};
  } else if (name == "no-truncation") {
    s.prediction = "normal-limit";
    s.options.mode = StationaryMode::LongRun;
    s.options.chain = ChainKind::X;
  } else if (name == "non-hitting") {
    s.prediction = "non-hitting";
  } else if (name == "tau-divergence") {
    s.prediction = "tau-divergent";
  } else if (name == "gamma-search") {
    s.prediction = "mean-targets";
  } else {
    fail(ErrorKind::Config, "unknown scenario \"" + name + "\"");
  }
  const bool has_family = name != "non-hitting" && name != "tau-divergence";
  s.family = example_family(has_family ? name : "example-1.1");
  return s;
}

LimitLaw predicted_law(const Scenario& s) {
  const auto sigma = s.family.noise.covariance();
  const double a = s.family.drift;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(s.family.dimension);
  if (s.prediction == "normal-limit") return LimitLaw(a, sigma, zero, 1.0);
  if (s.prediction == "half-normal-limit") {
    // One-sided limit: mu on the feasibility boundary, mu = p sqrt(Sigma)/sqrt(pi a).
    Eigen::VectorXd mu(1);
    mu[0] = std::sqrt(sigma(0, 0)) / std::sqrt(std::numbers::pi * a);
    return LimitLaw(a, sigma, mu, 1.0);
  }
  if (s.prediction == "degenerate-zero") return LimitLaw(a, sigma, zero, 0.0);
  fail(ErrorKind::InvalidArgument, "scenario \"" + s.name + "\" has no limit law prediction");
}

nlohmann::json run_scenario(const Scenario& s, const RandomStream& stream, int threads) {
  json report{{"scenario", s.name}, {"prediction", s.prediction}};
  json checks = json::array();
  json warnings = json::array();

  if (s.name == "non-hitting") {
    json runs = json::array();
    for (double alpha : {0.25, 0.3, 0.49}) {
      const double bound = (1.0 - 2.0 * alpha) / (1.0 - alpha);
      bool all = true;
      double worst = std::numeric_limits<double>::infinity();
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto sub = stream.substream(seed).substream(static_cast<std::uint64_t>(alpha * 1000));
        const auto r = non_hitting_counterexample(alpha, 0.5 * bound, 100'000, sub);
        runs.push_back(to_json(r));
        all = all && r.pass;
        worst = std::min(worst, r.min_abs);
      }
      checks.push_back(check("min-abs-alpha-" + std::to_string(alpha).substr(0, 4), all, worst, bound - 1e-12, ">="));
    }
    report["runs"] = runs;
  } else if (s.name == "tau-divergence") {
    ProbeOptions options;
    options.threads = threads;
    const auto diverging = tau_divergence_probe(example_family("example-1.1"), options, stream.substream(1));
    const auto bounded = tau_divergence_probe(example_family("example-2"), options, stream.substream(2));
    report["probes"] = {{"example-1.1", to_json(diverging)}, {"example-2", to_json(bounded)}};
    checks.push_back(check("example-1.1-divergence-consistent", diverging.verdict == "divergence-consistent",
                           diverging.growth_exponent, 0.25, ">="));
    checks.push_back(check("example-2-tau-bounded", bounded.verdict == "tau-bounded", bounded.growth_exponent, 0.1, "<"));
  } else if (s.name == "gamma-search") {
    GammaSearchOptions options;
    const double top = gamma_search_upper_target(s.family);
    for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) options.targets.push_back(f * top);
    options.m_grid = s.m_grid;
    options.threads = threads;
    const auto entries = gamma_search(s.family, options, stream);
    json rows = json::array();
    for (const auto& e : entries) {
      rows.push_back(to_json(e));
      const double miss = std::max(std::abs(e.achieved - e.target), std::abs(e.validated - e.target));
      checks.push_back(check("target-" + std::to_string(e.target).substr(0, 6) + "-m-" + std::to_string(e.m),
                             e.ok && miss < options.tolerance, miss, options.tolerance, "<"));
    }
    report["searches"] = rows;
  } else {
    const LimitLaw law = predicted_law(s);
    const double v = 1.0;
    const auto projection = law.projection(std::span<const double>(&v, 1));
    report["predicted"] = {{"a", law.drift()},
                           {"sigma", law.sigma()(0, 0)},
                           {"mu", law.mu()[0]},
                           {"p", law.p()},
                           {"scale", projection.scale},
                           {"prob_plus", projection.prob_plus},
                           {"atom_mass", projection.atom_mass}};
    json per_m = json::array();
    std::vector<double> second, absolute;
    for (auto m : s.m_grid) {
      auto options = s.options;
      options.threads = threads;
      const auto sample = stationary_sample(s.family, m, s.samples, options, stream.substream(m));
      for (const auto& w : sample.warnings) warnings.push_back("m=" + std::to_string(m) + ": " + w);
      json entry = stationary_entry(s, m, sample);
      const auto y = projections(sample);
      if (s.prediction != "degenerate-zero") {
        const double ks = ks_distance(y, mixture_cdf(projection));
        entry["ks"] = ks;
        entry["ks_threshold"] = s.ks_threshold;
        checks.push_back(check("ks-m-" + std::to_string(m), ks < s.ks_threshold, ks, s.ks_threshold, "<"));
      }
      if (s.prediction == "half-normal-limit") {
        const double gamma = s.family.gamma.value(m);
        const double lowest = entry["min"].get<double>();
        checks.push_back(check("min-above-minus-gamma-m-" + std::to_string(m), lowest >= -gamma, lowest, -gamma, ">="));
      }
      second.push_back(entry["second_moment"].get<double>());
      absolute.push_back(entry["abs_mean"].get<double>());
      per_m.push_back(entry);
    }
    if (s.prediction == "degenerate-zero") {
      bool decreasing = true, abs_decreasing = true;
      for (std::size_t i = 1; i < second.size(); ++i) {
        decreasing = decreasing && second[i] < second[i - 1];
        abs_decreasing = abs_decreasing && absolute[i] < absolute[i - 1];
      }
      checks.push_back(check("second-moment-strictly-decreasing", decreasing, second.back(), second.front(), "<"));
      checks.push_back(check("second-moment-small", second.back() < 0.01, second.back(), 0.01, "<"));
      checks.push_back(check("abs-mean-strictly-decreasing", abs_decreasing, absolute.back(), absolute.front(), "<"));
    }
    report["per_m"] = per_m;
    json validation = json::array();
    for (auto m : s.m_grid) validation.push_back(to_json(validate_family(s.family, m)));
    report["validation"] = validation;
  }

  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  report["checks"] = checks;
  report["warnings"] = warnings;
  report["verdict"] = pass ? "pass" : "fail";
  return report;
}

double gamma_search_upper_target(const ModelFamily& base) {
  const double e2 = base.noise.covariance()(0, 0);
  return std::sqrt(e2) / std::sqrt(std::numbers::pi * base.drift);
}

std::vector<GammaSearchEntry> gamma_search(const ModelFamily& base, const GammaSearchOptions& options,
                                           const RandomStream& stream) {
  check_search_family(base);
  const double top = gamma_search_upper_target(base);
  for (double t : options.targets)
    if (!(t >= 0.0) || t > top * (1.0 + 1e-12))
      fail(ErrorKind::InvalidArgument, "gamma search target outside [0, sqrt(E xi^2)/sqrt(pi a)]");
  if (!(options.c_max > 0.0)) fail(ErrorKind::InvalidArgument, "c_max must be positive");

  std::vector<GammaSearchEntry> out;
  for (auto m : options.m_grid) {
    const double beta = base.beta.value(m);
    const std::int64_t budget = options.budget > 0 ? options.budget : std::max<std::int64_t>(1'000'000, 40'000 * m);
    const auto crn = stream.substream(static_cast<std::uint64_t>(m));
    std::map<double, TimeAverage> cache;
    auto evaluate = [&](double c, const RandomStream& s) {
      ModelFamily f = base;
      f.gamma = ScalarSchedule::explicit_table({{m, c * beta}});
      return long_run_mean(f, m, budget, 10 * m, options.replicas, s, options.threads);
    };
    auto at = [&](double c) -> const TimeAverage& {
      auto it = cache.find(c);
      if (it == cache.end()) it = cache.emplace(c, evaluate(c, crn)).first;
      return it->second;
    };

    std::vector<double> grid;
    for (double f : {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 2.0 / 3, 1.0}) grid.push_back(f * options.c_max);
    std::vector<double> values;
    for (double c : grid) values.push_back(at(c).mean);
    // Keep the monotone prefix up to the largest estimate.
    const auto peak = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    grid.resize(peak + 1);
    values.resize(peak + 1);

    for (std::size_t ti = 0; ti < options.targets.size(); ++ti) {
      const double target = options.targets[ti];
      GammaSearchEntry e;
      e.m = m;
      e.target = target;
      const auto before = cache.size();
      for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1]) ++e.monotonicity_violations;

      double chosen = -1.0;
      if (target <= values.front()) {
        if (values.front() - target < options.tolerance) chosen = grid.front();
        else e.error = "target below the achievable range at this m (smallest estimate " + std::to_string(values.front()) + ")";
      } else if (target >= values.back()) {
        if (target - values.back() < options.tolerance) chosen = grid.back();
        else e.error = "target above the achievable range at this m (largest estimate " + std::to_string(values.back()) + ")";
      } else {
        std::size_t i = 0;
        while (!(values[i] <= target && target <= values[i + 1])) ++i;
        double lo = grid[i], hi = grid[i + 1];
        double f_lo = values[i], f_hi = values[i + 1];
        double best = std::abs(f_lo - target) < std::abs(f_hi - target) ? lo : hi;
        for (int iter = 0; iter < 40; ++iter) {
          if (std::abs(at(best).mean - target) <= options.tolerance / 4) break;
          if (hi - lo < 1e-4 * options.c_max) break;
          const double mid = 0.5 * (lo + hi);
          const double f_mid = at(mid).mean;
          if (f_mid < f_lo || f_mid > f_hi) ++e.monotonicity_violations;
          if (std::abs(f_mid - target) < std::abs(at(best).mean - target)) best = mid;
          if (f_mid < target) {
            lo = mid;
            f_lo = f_mid;
          } else {
            hi = mid;
            f_hi = f_mid;
          }
        }
        chosen = best;
      }
      e.evaluations = static_cast<int>(cache.size() - before);
      if (chosen > 0.0) {
        const auto& est = at(chosen);
        e.c = chosen;
        e.gamma = chosen * beta;
        e.achieved = est.mean;
        e.achieved_stderr = est.stderr_mean;
        const auto fresh = evaluate(chosen, stream.substream(kValidationTag).substream(static_cast<std::uint64_t>(m) * 64 + ti));
        ++e.evaluations;
        e.validated = fresh.mean;
        e.validated_stderr = fresh.stderr_mean;
        e.ok = std::abs(e.achieved - target) < options.tolerance && std::abs(e.validated - target) < options.tolerance;
        if (!e.ok) e.error = "estimate at the selected c misses the target by more than the tolerance";
      }
      out.push_back(e);
    }
  }
  return out;
}

ProbeReport tau_divergence_probe(const ModelFamily& f, const ProbeOptions& options, const RandomStream& stream) {
  const auto ratio = asymptotic_ratio(f.gamma, f.beta);
  if (!ratio) fail(ErrorKind::InvalidArgument, "gamma_m / beta_m has no closed-form limit for these schedules");
  if (std::isinf(*ratio)) fail(ErrorKind::Domain, "random-walk comparison inapplicable: gamma_m / beta_m diverges");
  if (!(options.epsilon > 0.0)) fail(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (options.horizon < 100) fail(ErrorKind::InvalidArgument, "probe horizon must be >= 100");

  ProbeReport report;
  report.rho = *ratio;

  if (!f.alpha.tends_to_one()) {
    std::vector<double> means;
    bool censored = false;
    for (auto m : options.m_grid) {
      report.tau_by_m.push_back(
          estimate_tau_stats(f, m, options.replicas, options.horizon, stream.substream(m), options.threads));
      means.push_back(report.tau_by_m.back().mean);
      censored = censored || report.tau_by_m.back().censored_fraction > 0.0;
    }
    const double span = std::log(static_cast<double>(options.m_grid.back()) / static_cast<double>(options.m_grid.front()));
    report.growth_exponent = span > 0.0 ? std::log(means.back() / means.front()) / span : 0.0;
    report.verdict = !censored && report.growth_exponent < 0.1 ? "tau-bounded" : "inconclusive";
    return report;
  }

  const int d = f.dimension;
  std::vector<std::int64_t> times(static_cast<std::size_t>(options.replicas));
  constexpr std::size_t kChunks = 64;
  const auto base = stream.substream(kProbeTag);
  detail::parallel_for(kChunks, options.threads, [&](std::size_t chunk) {
    std::vector<double> walk(d), step(d);
    for (std::size_t r = chunk; r < times.size(); r += kChunks) {
      auto sub = base.substream(r);
      std::fill(walk.begin(), walk.end(), 0.0);
      std::int64_t t = 0;
      bool hit = false;
      while (t < options.horizon) {
        f.noise.draw(sub, step);
        for (int j = 0; j < d; ++j) walk[j] += step[j];
        ++t;
        if (f.region.contains_inflated(walk, report.rho, options.epsilon)) {
          hit = true;
          break;
        }
      }
      times[r] = hit ? t : options.horizon + 1;
    }
  });
  report.walk = tau_stats_from_times(0, times, options.horizon);
  for (std::int64_t h : {options.horizon / 100, options.horizon / 10, options.horizon}) {
    const auto at_h = tau_stats_from_times(0, times, h);
    report.horizons.push_back(h);
    report.truncated_means.push_back(at_h.mean);
    report.truncated_stderrs.push_back(at_h.stderr_mean);
    report.censored_fractions.push_back(at_h.censored_fraction);
  }
  const auto k = report.truncated_means.size();
  report.growth_exponent = std::log(report.truncated_means[k - 1] / report.truncated_means[k - 2]) / std::log(10.0);
  report.verdict = report.growth_exponent >= 0.25 && report.censored_fractions.back() > 0.0 ? "divergence-consistent"
                                                                                           : "inconclusive";
  return report;
}

NonHittingReport non_hitting_counterexample(double alpha, double gamma, std::int64_t steps, RandomStream& stream) {
  if (!(alpha > 0.0 && alpha < 0.5)) fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 1/2)");
  if (steps < 1) fail(ErrorKind::InvalidArgument, "steps must be >= 1");
  NonHittingReport r;
  r.alpha = alpha;
  r.gamma = gamma;
  r.steps = steps;
  r.bound = (1.0 - 2.0 * alpha) / (1.0 - alpha);
  r.min_abs = std::numeric_limits<double>::infinity();
  double z = 0.0;
  for (std::int64_t t = 0; t < steps; ++t) {
    const double xi = (stream.next_u32() & 1U) ? 1.0 : -1.0;
    z = alpha * z + xi;
    r.min_abs = std::min(r.min_abs, std::abs(z));
  }
  r.hit = r.min_abs <= gamma;
  r.pass = r.min_abs >= r.bound - 1e-12;
  return r;
}

json to_json(const TauStats& stats) {
  return {{"m", stats.m},
          {"replicas", stats.replicas},
          {"mean", stats.mean},
          {"stderr", stats.stderr_mean},
          {"horizon", stats.horizon},
          {"censored_fraction", stats.censored_fraction}};
}

json to_json(const ProbeReport& report) {
  json out{{"verdict", report.verdict},
           {"rho", report.rho},
           {"growth_exponent", report.growth_exponent}};
  if (!report.horizons.empty()) {
    out["horizons"] = report.horizons;
    out["truncated_means"] = report.truncated_means;
    out["truncated_stderrs"] = report.truncated_stderrs;
    out["censored_fractions"] = report.censored_fractions;
    const auto& g = report.walk.grid;
    const auto& s = report.walk.survival;
    json tail = json::array();
    for (std::size_t i = 0; i < g.size() && i < 10; ++i) tail.push_back({{"j", g[i]}, {"survival", s[i]}});
    out["walk_survival_head"] = tail;
  }
  if (!report.tau_by_m.empty()) {
    json rows = json::array();
    for (const auto& t : report.tau_by_m) rows.push_back(to_json(t));
    out["tau_by_m"] = rows;
  }
  return out;
}

json to_json(const GammaSearchEntry& e) {
  json out{{"m", e.m},
           {"target", e.target},
           {"ok", e.ok},
           {"c", e.c},
           {"gamma", e.gamma},
           {"achieved", e.achieved},
           {"achieved_stderr", e.achieved_stderr},
           {"validated", e.validated},
           {"validated_stderr", e.validated_stderr},
           {"evaluations", e.evaluations},
           {"monotonicity_violations", e.monotonicity_violations}};
  if (!e.error.empty()) out["error"] = e.error;
  return out;
}

json to_json(const NonHittingReport& r) {
  return {{"alpha", r.alpha}, {"gamma", r.gamma}, {"steps", r.steps}, {"min_abs", r.min_abs},
          {"bound", r.bound}, {"hit", r.hit},     {"pass", r.pass}};
}

json to_json(const ValidationVerdict& verdict) {
  json items = json::array();
  for (const auto& i : verdict.items) items.push_back({{"name", i.name}, {"pass", i.pass}, {"witness", i.witness}});
  return {{"m", verdict.m}, {"pass", verdict.pass()}, {"items", items}};
}

}  // namespace restartar
