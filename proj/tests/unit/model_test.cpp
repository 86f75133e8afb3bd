#include <doctest.h>

#include <cmath>

#include "restartar/error.hpp"
#include "restartar/model.hpp"
#include "restartar/scenarios.hpp"

using namespace restartar;

TEST_CASE("schedules") {
  CHECK(ScalarSchedule::inv_sqrt_m().value(4) == doctest::Approx(0.5));
  CHECK(ScalarSchedule::scaled_inv_sqrt_m(0.75).value(4) == doctest::Approx(0.375));
  CHECK(ScalarSchedule::power(1.0, -1.0).value(10) == doctest::Approx(0.1));
  const auto table = ScalarSchedule::explicit_table({{10, 0.3}, {100, 0.1}});
  CHECK(table.value(100) == 0.1);
  CHECK_THROWS_AS(table.value(50), Error);
  CHECK_FALSE(table.power_form().has_value());
  CHECK(ScalarSchedule::inv_sqrt_m().certified_inv_sqrt());
  CHECK_FALSE(ScalarSchedule::scaled_inv_sqrt_m(0.75).certified_inv_sqrt());
  CHECK(schedule_value(ScalarSchedule::inv_sqrt_m(), 100) == doctest::Approx(0.1));
}

TEST_CASE("asymptotic ratio of schedules") {
  const auto beta = ScalarSchedule::inv_sqrt_m();
  CHECK(*asymptotic_ratio(ScalarSchedule::scaled_inv_sqrt_m(0.5), beta) == doctest::Approx(0.5));
  CHECK(*asymptotic_ratio(ScalarSchedule::power(1.0, -1.0), beta) == doctest::Approx(0.0));
  CHECK(std::isinf(*asymptotic_ratio(ScalarSchedule::power(1.0, -0.25), beta)));
  CHECK_FALSE(asymptotic_ratio(ScalarSchedule::explicit_table({{1, 1.0}}), beta).has_value());
}

TEST_CASE("alpha moments") {
  const auto det = AlphaLaw::heavy_traffic(1.0).moments(100);
  CHECK(det.mean == doctest::Approx(0.99));
  CHECK(det.second == doctest::Approx(0.9801));
  const auto disc = AlphaLaw::finite_discrete({0.5, 1.0}, {0.5, 0.5}).moments(7);
  CHECK(disc.mean == doctest::Approx(0.75));
  CHECK(disc.second == doctest::Approx(0.625));
  const auto shifted = AlphaLaw::two_point_shifted({1.25, 0.75}, {0.5, 0.5}, 0.5);
  CHECK(shifted.drift() == doctest::Approx(0.5));
  CHECK(shifted.moments(10).mean == doctest::Approx(0.95));
  CHECK(shifted.moments(10).second == doctest::Approx(0.5 * 1.2 * 1.2 + 0.5 * 0.7 * 0.7));
  CHECK(alpha_moments(shifted, 10).mean == shifted.moments(10).mean);
  CHECK_FALSE(shifted.tends_to_one());
  CHECK(AlphaLaw::heavy_traffic(2.0).tends_to_one());
}

TEST_CASE("alpha sampler frequencies") {
  const AlphaSampler sampler(AlphaLaw::finite_discrete({0.5, 1.0}, {0.25, 0.75}), 1);
  RandomStream s(1, 1);
  const int n = 100'000;
  int high = 0;
  for (int i = 0; i < n; ++i) high += sampler.draw(s) == 1.0;
  CHECK(std::abs(high / double(n) - 0.75) < 4.0 * std::sqrt(0.1875 / n));
  CHECK(AlphaSampler(AlphaLaw::heavy_traffic(1.0), 10).deterministic());
}

TEST_CASE("alpha construction errors") {
  CHECK_THROWS_AS(AlphaLaw::heavy_traffic(0.0), Error);
  CHECK_THROWS_WITH(AlphaLaw::finite_discrete({0.5, 1.0}, {0.5, 0.4}), doctest::Contains("probabilities must sum to 1"));
}

TEST_CASE("regions are open") {
  const auto ball = RestartRegion::ball(1, 1.0);
  const double two = 2.0, half = 0.5, one = 1.0;
  CHECK_FALSE(ball.contains({&two, 1}));
  CHECK(ball.contains({&half, 1}));
  CHECK_FALSE(ball.contains({&one, 1}));
  const auto interval = RestartRegion::interval(-0.5, 0.5);
  CHECK_FALSE(interval.contains({&half, 1}));
  CHECK(interval.contains_scaled({&half, 1}, 2.0));
  CHECK(interval.inner_radius() == 0.5);
  const auto asym = RestartRegion::interval(-1.0, 0.5);
  CHECK(asym.inner_radius() == 0.5);
  CHECK(asym.outer_radius() == 1.0);
  const auto box = RestartRegion::centered_box({1.0, 2.0});
  const double in[2] = {0.9, -1.9}, out[2] = {0.9, 2.0};
  CHECK(box.contains(in));
  CHECK_FALSE(box.contains(out));
  CHECK(box.inner_radius() == 1.0);
  CHECK(box.outer_radius() == doctest::Approx(std::sqrt(5.0)));
  CHECK(box.contains_inflated(out, 1.0, 0.01));
  CHECK_THROWS_AS(RestartRegion::interval(0.1, 0.5), Error);
}

TEST_CASE("validation of the worked examples") {
  for (const auto& name : preset_names()) CHECK(validate_family(example_family(name), 1000).pass());
  const auto v = validate_family(example_family("example-1.1"), 0);
  CHECK_FALSE(v.pass());
  auto f = example_family("example-1.1");
  f.alpha = AlphaLaw::finite_discrete({0.4}, {1.0});
  f.drift = 0.6;
  const auto bad = validate_family(f, 100);
  CHECK_FALSE(bad.pass());
  bool mass_item_failed = false;
  for (const auto& item : bad.items) mass_item_failed |= item.name == "alpha-mass-near-one" && !item.pass;
  CHECK(mass_item_failed);
  f = example_family("example-1.1");
  f.region = RestartRegion::ball(2, 1.0);
  CHECK_FALSE(validate_family(f, 100).pass());
}
