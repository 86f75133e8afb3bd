#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "restartar/model.hpp"
#include "restartar/rng.hpp"

namespace restartar {

/// X and Y driven by the same draws, states at t = 0..horizon (row-major).
struct CoupledTrace {
  std::int64_t m = 0;
  int dimension = 1;
  std::vector<double> states_x;
  std::vector<double> states_y;
  std::int64_t tau = 0;   // first hitting index, or the horizon if censored
  bool censored = false;
};

struct Cycle {
  std::vector<double> states;  // Y_1 .. Y_tau, row-major
  bool capped = false;
};

enum class StationaryMode { CyclePool, LongRun };
enum class ChainKind { Y, X };

struct StationaryOptions {
  StationaryMode mode = StationaryMode::CyclePool;
  ChainKind chain = ChainKind::Y;
  std::int64_t thin = 0;      // 0 selects ceil(m/4)
  std::int64_t burn_in = -1;  // -1 selects 10 m (long-run only)
  int replicas = 16;
  std::int64_t cap = 10'000'000;
  int threads = 1;
};

struct StationarySample {
  int dimension = 1;
  std::vector<double> states;  // n x d, row-major
  std::int64_t thin = 1;
  std::int64_t burn_in = 0;
  std::int64_t steps = 0;
  std::int64_t cycles = 0;
  std::int64_t capped_cycles = 0;
  double mean_cycle_length = 0.0;  // cycle-pool only: an estimate of E tau
  double cycle_length_stderr = 0.0;
  std::vector<std::string> warnings;
};

struct TauStats {
  std::int64_t m = 0;
  std::int64_t replicas = 0;
  double mean = 0.0;  // mean of min(tau, horizon)
  double stderr_mean = 0.0;
  std::vector<std::int64_t> grid;
  std::vector<double> survival;  // P(tau > grid[i])
  std::int64_t horizon = 0;
  double censored_fraction = 0.0;
};

struct TailReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// alpha * state * 1{state not in gamma A} + beta * noise.
std::vector<double> step_y(std::span<const double> state, double alpha, std::span<const double> noise, double beta,
                           double gamma, const RestartRegion& region);

CoupledTrace simulate_coupled(const ModelFamily& f, std::int64_t m, std::int64_t horizon, RandomStream& stream);

/// Y from the origin until its first entry into gamma_m A (inclusive) or cap steps.
Cycle simulate_cycle(const ModelFamily& f, std::int64_t m, RandomStream& stream, std::int64_t cap);

/// n states from the stationary law of Y (or X), split over a fixed number of
/// replicas with streams stream.substream(r); the result does not depend on
/// options.threads.
StationarySample stationary_sample(const ModelFamily& f, std::int64_t m, std::int64_t n,
                                   const StationaryOptions& options, const RandomStream& stream);

struct TimeAverage {
  double mean = 0.0;
  double stderr_mean = 0.0;  // across replicas
  std::int64_t steps = 0;
};

/// Time average of Y (d = 1) over `steps` post-burn-in steps, split over
/// `replicas` streams stream.substream(r). Reusing the stream gives common
/// random numbers across parameter values.
TimeAverage long_run_mean(const ModelFamily& f, std::int64_t m, std::int64_t steps, std::int64_t burn_in,
                          int replicas, const RandomStream& stream, int threads = 1);

TauStats estimate_tau_stats(const ModelFamily& f, std::int64_t m, std::int64_t replicas, std::int64_t horizon,
                            const RandomStream& stream, int threads = 1);

/// Survival estimates from raw (possibly censored) hitting times.
TauStats tau_stats_from_times(std::int64_t m, const std::vector<std::int64_t>& times, std::int64_t horizon);

/// Least-squares fit of log P(tau > j) against j. Throws if fewer than three
/// informative survival entries remain.
TailReport geometric_tail_diagnostic(const TauStats& stats);

}  // namespace restartar
