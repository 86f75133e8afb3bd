#include <doctest.h>

#include <cmath>

#include "restartar/chain.hpp"
#include "restartar/error.hpp"
#include "restartar/scenarios.hpp"

using namespace restartar;

TEST_CASE("single restart step") {
  const double state = 2.0, noise = 1.0;
  const auto next = step_y({&state, 1}, 0.9, {&noise, 1}, 0.1, 1.0, RestartRegion::ball(1, 1.0));
  REQUIRE(next.size() == 1);
  CHECK(next[0] == doctest::Approx(1.9));
  const double inside = 0.5;
  const auto restarted = step_y({&inside, 1}, 0.9, {&noise, 1}, 0.1, 1.0, RestartRegion::ball(1, 1.0));
  CHECK(restarted[0] == doctest::Approx(0.1));
  // 0.5 lies on the boundary of (-0.5, 0.5), so no restart.
  const auto boundary = step_y({&inside, 1}, 1.0, {&noise, 1}, 0.0, 1.0, RestartRegion::interval(-0.5, 0.5));
  CHECK(boundary[0] == 0.5);
}

TEST_CASE("first cycle length") {
  // Y_1 = xi / sqrt(m) lies in gamma_m A exactly when |xi| < 1/2.
  const auto f = example_family("example-1.1");
  RandomStream root(17, 0);
  const int n = 40'000;
  int longer = 0;
  for (int i = 0; i < n; ++i) {
    auto s = root.substream(i);
    const auto c = simulate_cycle(f, 400, s, 1'000'000);
    REQUIRE_FALSE(c.capped);
    longer += c.states.size() >= 2;
  }
  CHECK(std::abs(longer / double(n) - 0.5) < 0.01);
}

TEST_CASE("coupled trace shares draws until the first hit") {
  const auto f = example_family("example-1.1");
  RandomStream s(3, 9);
  const auto trace = simulate_coupled(f, 100, 500, s);
  REQUIRE(trace.states_x.size() == 501);
  REQUIRE(trace.states_y.size() == 501);
  CHECK(trace.states_x[0] == 0.0);
  CHECK(trace.states_y[0] == 0.0);
  for (std::int64_t t = 0; t <= std::min<std::int64_t>(trace.tau, 500); ++t)
    CHECK(trace.states_x[t] == trace.states_y[t]);
}

TEST_CASE("geometric tail fit on synthetic times") {
  std::vector<std::int64_t> times;
  // P(tau > j) = 2^-j exactly for j < 20.
  for (int j = 1; j <= 20; ++j)
    for (int k = 0; k < (j < 20 ? 1 << (20 - j) : 2); ++k) times.push_back(j);
  const auto stats = tau_stats_from_times(1, times, 1000);
  const auto tail = geometric_tail_diagnostic(stats);
  CHECK(tail.slope == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(tail.r_squared == doctest::Approx(1.0));
  CHECK(stats.censored_fraction == 0.0);
}

TEST_CASE("censoring") {
  const std::vector<std::int64_t> times(100, 50);
  const auto stats = tau_stats_from_times(1, times, 10);
  CHECK(stats.censored_fraction == 1.0);
  CHECK(stats.mean == 10.0);
  CHECK_THROWS_AS(geometric_tail_diagnostic(stats), Error);
  CHECK_THROWS_AS(tau_stats_from_times(1, {}, 10), Error);
}

TEST_CASE("stationary sample does not depend on threads") {
  const auto f = example_family("example-1.1");
  StationaryOptions one;
  one.threads = 1;
  StationaryOptions many = one;
  many.threads = 4;
  const RandomStream s(5, 0);
  const auto a = stationary_sample(f, 100, 4000, one, s);
  const auto b = stationary_sample(f, 100, 4000, many, s);
  CHECK(a.states == b.states);
  CHECK(a.states.size() == 4000);
  CHECK(a.thin == 25);
  StationaryOptions x = one;
  x.chain = ChainKind::X;
  CHECK_THROWS_AS(stationary_sample(f, 100, 100, x, s), Error);
}

TEST_CASE("tau statistics for a bounded example") {
  const auto f = example_family("example-2");
  const auto stats = estimate_tau_stats(f, 100, 2000, 10'000, RandomStream(2, 0), 2);
  CHECK(stats.censored_fraction == 0.0);
  CHECK(stats.mean > 1.0);
  CHECK(stats.grid.size() == stats.survival.size());
  for (std::size_t i = 1; i < stats.survival.size(); ++i) CHECK(stats.survival[i] <= stats.survival[i - 1]);
}
