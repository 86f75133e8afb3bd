#include "restartar/chain.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "restartar/error.hpp"

namespace restartar {
namespace {

// Model frozen at one m; advances a state in place.
class Stepper {
 public:
  Stepper(const ModelFamily& f, std::int64_t m)
      : family_(f), alpha_(f.alpha, m), beta_(f.beta.value(m)), gamma_(f.gamma.value(m)), noise_(f.dimension) {
    if (f.noise.dimension() != f.dimension || f.region.dimension() != f.dimension)
      fail(ErrorKind::InvalidArgument, "noise and region dimensions must equal the model dimension");
    if (f.region.kind() == RestartRegion::Kind::Interval) {
      interval_ = true;
      lo_ = gamma_ * f.region.parameters()[0];
      hi_ = gamma_ * f.region.parameters()[1];
    }
    if (f.noise.kind() == NoiseLaw::Kind::UniformInterval) {
      uniform_ = true;
      noise_lo_ = beta_ * f.noise.parameters()[0];
      noise_width_ = beta_ * (f.noise.parameters()[1] - f.noise.parameters()[0]);
    }
    constant_alpha_ = alpha_.deterministic();
    alpha_value_ = constant_alpha_ ? alpha_.draw(dummy_) : 0.0;
  }

  [[nodiscard]] bool in_region(std::span<const double> y) const {
    if (interval_) return lo_ < y[0] && y[0] < hi_;
    return family_.region.contains_scaled(y, gamma_);
  }

  // One step of Y (restart = state lies in gamma A) or of X (restart = false).
  void advance(std::span<double> y, bool restart, RandomStream& stream) {
    const double alpha = constant_alpha_ ? alpha_value_ : alpha_.draw(stream);
    if (uniform_) {
      const double kick = noise_lo_ + noise_width_ * stream.uniform();
      y[0] = restart ? kick : alpha * y[0] + kick;
      return;
    }
    family_.noise.draw(stream, noise_);
    if (restart) {
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = beta_ * noise_[j];
    } else {
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = alpha * y[j] + beta_ * noise_[j];
    }
  }

  // Same draws applied to both chains.
  void advance_coupled(std::span<double> x, std::span<double> y, bool restart, RandomStream& stream) {
    const double alpha = constant_alpha_ ? alpha_value_ : alpha_.draw(stream);
    family_.noise.draw(stream, noise_);
    for (std::size_t j = 0; j < y.size(); ++j) {
      x[j] = alpha * x[j] + beta_ * noise_[j];
      y[j] = restart ? beta_ * noise_[j] : alpha * y[j] + beta_ * noise_[j];
    }
  }

 private:
  const ModelFamily& family_;
  AlphaSampler alpha_;
  double beta_;
  double gamma_;
  std::vector<double> noise_;
  RandomStream dummy_{0, 0};
  bool constant_alpha_ = false;
  double alpha_value_ = 0.0;
  bool interval_ = false;
  double lo_ = 0.0, hi_ = 0.0;
  bool uniform_ = false;
  double noise_lo_ = 0.0, noise_width_ = 0.0;
};

std::int64_t split_count(std::int64_t n, int parts, int index) {
  return n / parts + (index < n % parts ? 1 : 0);
}

struct ReplicaResult {
  std::vector<double> states;
  std::int64_t steps = 0;
  std::int64_t cycles = 0;
  std::int64_t capped = 0;
  double length_sum = 0.0;
  double length_sumsq = 0.0;
};

ReplicaResult run_cycle_pool(const ModelFamily& f, std::int64_t m, std::int64_t target, std::int64_t thin,
                             std::int64_t cap, RandomStream stream) {
  const int d = f.dimension;
  Stepper stepper(f, m);
  ReplicaResult out;
  out.states.reserve(static_cast<std::size_t>(target * d));
  std::vector<double> y(d, 0.0);
  std::vector<double> pending;
  std::int64_t kept_phase = 0;
  // Guard against families whose cycles are all capped.
  const std::int64_t max_capped = 1000;
  while (static_cast<std::int64_t>(out.states.size()) < target * d) {
    std::fill(y.begin(), y.end(), 0.0);
    pending.clear();
    std::int64_t phase = kept_phase;
    std::int64_t length = 0;
    bool restart = true;
    bool closed = false;
    while (length < cap) {
      stepper.advance(y, restart, stream);
      restart = false;
      ++length;
      if (++phase == thin) {
        phase = 0;
        pending.insert(pending.end(), y.begin(), y.end());
      }
      if (stepper.in_region(y)) {
        closed = true;
        break;
      }
    }
    out.steps += length;
    if (!closed) {
      ++out.capped;
      if (out.capped >= max_capped) break;
      continue;
    }
    ++out.cycles;
    out.length_sum += static_cast<double>(length);
    out.length_sumsq += static_cast<double>(length) * static_cast<double>(length);
    kept_phase = phase;
    out.states.insert(out.states.end(), pending.begin(), pending.end());
  }
  out.states.resize(std::min<std::size_t>(out.states.size(), static_cast<std::size_t>(target * d)));
  return out;
}

ReplicaResult run_long(const ModelFamily& f, std::int64_t m, std::int64_t target, std::int64_t thin,
                       std::int64_t burn_in, bool restarts, RandomStream stream) {
  const int d = f.dimension;
  Stepper stepper(f, m);
  ReplicaResult out;
  out.states.reserve(static_cast<std::size_t>(target * d));
  std::vector<double> y(d, 0.0);
  bool inside = restarts;  // the origin lies in gamma A
  for (std::int64_t t = 0; t < burn_in; ++t) {
    stepper.advance(y, inside, stream);
    if (restarts) inside = stepper.in_region(y);
  }
  out.steps = burn_in;
  for (std::int64_t k = 0; k < target; ++k) {
    for (std::int64_t t = 0; t < thin; ++t) {
      stepper.advance(y, inside, stream);
      if (restarts) inside = stepper.in_region(y);
    }
    out.steps += thin;
    out.states.insert(out.states.end(), y.begin(), y.end());
  }
  return out;
}

}  // namespace

std::vector<double> step_y(std::span<const double> state, double alpha, std::span<const double> noise, double beta,
                           double gamma, const RestartRegion& region) {
  if (state.size() != noise.size()) fail(ErrorKind::InvalidArgument, "state and noise dimensions differ");
  const bool restart = region.contains_scaled(state, gamma);
  std::vector<double> out(state.size());
  for (std::size_t j = 0; j < state.size(); ++j)
    out[j] = restart ? beta * noise[j] : alpha * state[j] + beta * noise[j];
  return out;
}

CoupledTrace simulate_coupled(const ModelFamily& f, std::int64_t m, std::int64_t horizon, RandomStream& stream) {
  if (horizon < 1) fail(ErrorKind::InvalidArgument, "horizon must be >= 1");
  const int d = f.dimension;
  Stepper stepper(f, m);
  CoupledTrace trace;
  trace.m = m;
  trace.dimension = d;
  trace.states_x.assign(static_cast<std::size_t>((horizon + 1) * d), 0.0);
  trace.states_y.assign(static_cast<std::size_t>((horizon + 1) * d), 0.0);
  std::vector<double> x(d, 0.0), y(d, 0.0);
  bool y_inside = true;
  bool hit = false;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    stepper.advance_coupled(x, y, y_inside, stream);
    y_inside = stepper.in_region(y);
    std::copy(x.begin(), x.end(), trace.states_x.begin() + t * d);
    std::copy(y.begin(), y.end(), trace.states_y.begin() + t * d);
    if (!hit && stepper.in_region(x)) {
      hit = true;
      trace.tau = t;
    }
  }
  if (!hit) {
    trace.tau = horizon;
    trace.censored = true;
  }
  return trace;
}

Cycle simulate_cycle(const ModelFamily& f, std::int64_t m, RandomStream& stream, std::int64_t cap) {
  if (cap < 1) fail(ErrorKind::InvalidArgument, "cycle cap must be >= 1");
  const int d = f.dimension;
  Stepper stepper(f, m);
  Cycle cycle;
  std::vector<double> y(d, 0.0);
  bool restart = true;
  for (std::int64_t t = 0; t < cap; ++t) {
    stepper.advance(y, restart, stream);
    restart = false;
    cycle.states.insert(cycle.states.end(), y.begin(), y.end());
    if (stepper.in_region(y)) return cycle;
  }
  cycle.capped = true;
  return cycle;
}

StationarySample stationary_sample(const ModelFamily& f, std::int64_t m, std::int64_t n,
                                   const StationaryOptions& options, const RandomStream& stream) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "sample size must be >= 1");
  if (options.replicas < 1) fail(ErrorKind::InvalidArgument, "replicas must be >= 1");
  if (options.cap < 1) fail(ErrorKind::InvalidArgument, "cycle cap must be >= 1");
  if (options.mode == StationaryMode::CyclePool && options.chain == ChainKind::X)
    fail(ErrorKind::InvalidArgument, "the X chain has no regenerative cycles; use long-run mode");

  StationarySample out;
  out.dimension = f.dimension;
  out.thin = options.thin > 0 ? options.thin : std::max<std::int64_t>(1, (m + 3) / 4);
  out.burn_in = options.mode == StationaryMode::LongRun ? (options.burn_in >= 0 ? options.burn_in : 10 * m) : 0;

  const int replicas = options.replicas;
  std::vector<ReplicaResult> results(replicas);
  detail::parallel_for(static_cast<std::size_t>(replicas), options.threads, [&](std::size_t r) {
    const auto target = split_count(n, replicas, static_cast<int>(r));
    const auto sub = stream.substream(r);
    if (options.mode == StationaryMode::CyclePool)
      results[r] = run_cycle_pool(f, m, target, out.thin, options.cap, sub);
    else
      results[r] = run_long(f, m, target, out.thin, out.burn_in, options.chain == ChainKind::Y, sub);
  });

  double length_sum = 0.0, length_sumsq = 0.0;
  for (const auto& r : results) {
    out.states.insert(out.states.end(), r.states.begin(), r.states.end());
    out.steps += r.steps;
    out.cycles += r.cycles;
    out.capped_cycles += r.capped;
    length_sum += r.length_sum;
    length_sumsq += r.length_sumsq;
  }
  if (out.cycles > 0) {
    const double c = static_cast<double>(out.cycles);
    out.mean_cycle_length = length_sum / c;
    const double var = out.cycles > 1 ? std::max(0.0, (length_sumsq - c * out.mean_cycle_length * out.mean_cycle_length) / (c - 1.0)) : 0.0;
    out.cycle_length_stderr = std::sqrt(var / c);
  }
  if (out.capped_cycles > 0)
    out.warnings.push_back(std::to_string(out.capped_cycles) + " cycles reached the cap of " +
                           std::to_string(options.cap) + " steps and were excluded");
  const auto got = static_cast<std::int64_t>(out.states.size()) / f.dimension;
  if (got < n)
    out.warnings.push_back("partial sample: " + std::to_string(got) + " of " + std::to_string(n) +
                           " states (cycle cap exhausted)");
  return out;
}

TimeAverage long_run_mean(const ModelFamily& f, std::int64_t m, std::int64_t steps, std::int64_t burn_in,
                          int replicas, const RandomStream& stream, int threads) {
  if (f.dimension != 1) fail(ErrorKind::InvalidArgument, "time averages are computed for d = 1");
  if (replicas < 1 || steps < replicas) fail(ErrorKind::InvalidArgument, "need at least one step per replica");
  std::vector<double> means(replicas);
  detail::parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
    Stepper stepper(f, m);
    auto sub = stream.substream(r);
    const auto count = split_count(steps, replicas, static_cast<int>(r));
    double y = 0.0;
    bool inside = true;
    for (std::int64_t t = 0; t < burn_in; ++t) {
      stepper.advance(std::span<double>(&y, 1), inside, sub);
      inside = stepper.in_region(std::span<const double>(&y, 1));
    }
    double sum = 0.0;
    for (std::int64_t t = 0; t < count; ++t) {
      stepper.advance(std::span<double>(&y, 1), inside, sub);
      inside = stepper.in_region(std::span<const double>(&y, 1));
      sum += y;
    }
    means[r] = sum / static_cast<double>(count);
  });
  TimeAverage out;
  out.steps = steps;
  for (double v : means) out.mean += v;
  out.mean /= replicas;
  if (replicas > 1) {
    double var = 0.0;
    for (double v : means) var += (v - out.mean) * (v - out.mean);
    out.stderr_mean = std::sqrt(var / (replicas - 1.0) / replicas);
  }
  return out;
}

TauStats tau_stats_from_times(std::int64_t m, const std::vector<std::int64_t>& times, std::int64_t horizon) {
  if (times.empty()) fail(ErrorKind::InvalidArgument, "no hitting times");
  TauStats stats;
  stats.m = m;
  stats.horizon = horizon;
  stats.replicas = static_cast<std::int64_t>(times.size());
  const double n = static_cast<double>(times.size());
  double sum = 0.0, sum2 = 0.0;
  std::int64_t censored = 0;
  for (auto t : times) {
    const double v = static_cast<double>(std::min(t, horizon));
    sum += v;
    sum2 += v * v;
    if (t > horizon) ++censored;
  }
  stats.mean = sum / n;
  const double var = times.size() > 1 ? std::max(0.0, (sum2 - n * stats.mean * stats.mean) / (n - 1.0)) : 0.0;
  stats.stderr_mean = std::sqrt(var / n);
  stats.censored_fraction = static_cast<double>(censored) / n;

  std::vector<std::int64_t> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  for (std::int64_t j = 1; j <= horizon; j = j < 100 ? j + 1 : std::max(j + 1, static_cast<std::int64_t>(j * 1.1))) {
    if (j >= horizon) break;
    stats.grid.push_back(j);
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), j);
    stats.survival.push_back(static_cast<double>(above) / n);
  }
  return stats;
}

TauStats estimate_tau_stats(const ModelFamily& f, std::int64_t m, std::int64_t replicas, std::int64_t horizon,
                            const RandomStream& stream, int threads) {
  if (replicas < 1) fail(ErrorKind::InvalidArgument, "replicas must be >= 1");
  if (horizon < 1) fail(ErrorKind::InvalidArgument, "horizon must be >= 1");
  std::vector<std::int64_t> times(static_cast<std::size_t>(replicas));
  constexpr std::size_t kChunks = 64;
  detail::parallel_for(kChunks, threads, [&](std::size_t chunk) {
    Stepper stepper(f, m);
    std::vector<double> x(f.dimension);
    for (std::size_t r = chunk; r < times.size(); r += kChunks) {
      auto sub = stream.substream(r);
      std::fill(x.begin(), x.end(), 0.0);
      std::int64_t t = 0;
      bool hit = false;
      while (t < horizon) {
        stepper.advance(x, false, sub);
        ++t;
        if (stepper.in_region(x)) {
          hit = true;
          break;
        }
      }
      times[r] = hit ? t : horizon + 1;
    }
  });
  return tau_stats_from_times(m, times, horizon);
}

TailReport geometric_tail_diagnostic(const TauStats& stats) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < stats.grid.size(); ++i) {
    const double s = stats.survival[i];
    if (s > 0.0 && s < 1.0 && s * static_cast<double>(stats.replicas) >= 5.0) {
      xs.push_back(static_cast<double>(stats.grid[i]));
      ys.push_back(std::log(s));
    }
  }
  if (xs.size() < 3) fail(ErrorKind::Runtime, "insufficient tail data for a geometric fit");
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  TailReport report;
  report.slope = sxy / sxx;
  report.intercept = my - report.slope * mx;
  report.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  report.points = static_cast<int>(xs.size());
  return report;
}

}  // namespace restartar
