#include <doctest.h>

#include <cmath>

#include "restartar/error.hpp"
#include "restartar/scenarios.hpp"

using namespace restartar;

TEST_CASE("non-hitting bounds") {
  const double expected[][2] = {{0.25, 2.0 / 3.0}, {0.3, 4.0 / 7.0}, {0.49, 0.02 / 0.51}};
  for (const auto& e : expected) {
    RandomStream s(21, 0);
    const auto r = non_hitting_counterexample(e[0], 0.5 * e[1], 20'000, s);
    CHECK(r.bound == doctest::Approx(e[1]));
    CHECK(r.pass);
    CHECK_FALSE(r.hit);
    CHECK(r.min_abs >= r.bound - 1e-12);
  }
  RandomStream s(1, 1);
  CHECK(non_hitting_counterexample(0.49, 0.0, 10, s).bound == doctest::Approx(0.0392).epsilon(1e-3));
  CHECK_THROWS_AS(non_hitting_counterexample(0.5, 0.1, 10, s), Error);
}

TEST_CASE("presets and scenarios") {
  for (const auto& name : scenario_names()) CHECK(make_scenario(name).name == name);
  CHECK_THROWS_AS(make_scenario("nope"), Error);
  CHECK_THROWS_AS(example_family("nope"), Error);
  const auto f = example_family("example-1.2");
  const double x = -0.7;
  CHECK(f.region.contains({&x, 1}));
}

TEST_CASE("predicted laws") {
  const auto normal = predicted_law(make_scenario("example-1.1"));
  CHECK(normal.mu()[0] == 0.0);
  CHECK(normal.sigma()(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(normal.p() == 1.0);
  const auto half = predicted_law(make_scenario("example-1.2"));
  CHECK(half.feasibility_ratio() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(half.mu()[0] > 0.0);
  CHECK(predicted_law(make_scenario("example-2")).p() == 0.0);
  CHECK_THROWS_AS(predicted_law(make_scenario("non-hitting")), Error);
}

TEST_CASE("gamma search upper target") {
  CHECK(gamma_search_upper_target(example_family("gamma-search")) == doctest::Approx(1.0 / std::sqrt(M_PI)));
}

TEST_CASE("gamma search is reproducible and rejects unreachable targets") {
  GammaSearchOptions options;
  options.targets = {0.2};
  options.m_grid = {100};
  options.budget = 200'000;
  options.tolerance = 0.05;
  const RandomStream s(8, 0);
  const auto a = gamma_search(example_family("gamma-search"), options, s);
  const auto b = gamma_search(example_family("gamma-search"), options, s);
  REQUIRE(a.size() == 1);
  CHECK(a[0].c == b[0].c);
  CHECK(a[0].achieved == b[0].achieved);
  CHECK(a[0].ok);
  CHECK(std::abs(a[0].achieved - 0.2) < 0.05);
  options.targets = {0.9};
  CHECK_THROWS_AS(gamma_search(example_family("gamma-search"), options, s), Error);
}

TEST_CASE("json views") {
  RandomStream s(2, 2);
  const auto j = to_json(non_hitting_counterexample(0.25, 0.1, 100, s));
  CHECK(j.contains("bound"));
  CHECK(to_json(validate_family(example_family("example-2"), 10)).at("pass").get<bool>());
}

TEST_CASE("random-walk probe one-step survival") {
  // First step leaves (-1/2 - eps, 1/2 + eps) with probability 1/2 - eps.
  ProbeOptions options;
  options.epsilon = 0.01;
  options.horizon = 100;
  options.replicas = 20'000;
  const auto report = tau_divergence_probe(example_family("example-1.1"), options, RandomStream(12, 0));
  CHECK(report.rho == doctest::Approx(1.0));
  REQUIRE_FALSE(report.walk.survival.empty());
  CHECK(report.walk.grid[0] == 1);
  CHECK(std::abs(report.walk.survival[0] - 0.49) < 4.0 * std::sqrt(0.25 / options.replicas));
  auto f = example_family("example-1.1");
  f.gamma = ScalarSchedule::power(1.0, -0.25);
  CHECK_THROWS_AS(tau_divergence_probe(f, options, RandomStream(12, 0)), Error);
}
