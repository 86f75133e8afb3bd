#include <doctest.h>

#include <cmath>

#include "restartar/error.hpp"
#include "restartar/noise.hpp"

using namespace restartar;

TEST_CASE("rademacher draws lie in {-1, 1}^3") {
  RandomStream s(3, 0);
  const auto law = NoiseLaw::rademacher_product(3);
  const auto xs = law.sample(s, 1000);
  for (double x : xs) CHECK((x == 1.0 || x == -1.0));
}

TEST_CASE("uniform interval sample mean obeys the CLT bound") {
  RandomStream s(11, 0);
  const auto law = NoiseLaw::uniform_interval(-1.0, 1.0);
  const std::size_t n = 100'000;
  const auto xs = law.sample(s, n);
  double sum = 0.0;
  for (double x : xs) {
    REQUIRE(std::abs(x) < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(3.0 * n));
}

TEST_CASE("finite discrete mean-zero law") {
  const auto law = NoiseLaw::finite_discrete({{-1.0}, {2.0}}, {2.0 / 3.0, 1.0 / 3.0});
  RandomStream s(5, 0);
  const std::size_t n = 200'000;
  const auto xs = law.sample(s, n);
  double sum = 0.0;
  for (double x : xs) sum += x;
  CHECK(std::abs(sum / n) < 4.0 * std::sqrt(2.0 / n));
  CHECK(law.covariance()(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("covariances") {
  CHECK(NoiseLaw::uniform_interval(-1.0, 1.0).covariance()(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(NoiseLaw::standard_gaussian(2).covariance().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(NoiseLaw::rademacher_product(3).covariance().isApprox(Eigen::MatrixXd::Identity(3, 3)));
  const auto box = NoiseLaw::uniform_box({1.0, 3.0}).covariance();
  CHECK(box(0, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(box(1, 1) == doctest::Approx(3.0));
  CHECK(box(0, 1) == 0.0);
}

TEST_CASE("directional moments") {
  const double one = 1.0;
  const std::span<const double> u1(&one, 1);
  const auto uni = NoiseLaw::uniform_interval(-1.0, 1.0);
  CHECK(uni.directional_moment(u1, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(uni.directional_moment(u1, 4) == doctest::Approx(1.0 / 5.0));
  CHECK(uni.directional_moment(u1, 3) == doctest::Approx(0.0));
  CHECK(NoiseLaw::standard_gaussian(1).directional_moment(u1, 4) == doctest::Approx(3.0));
  const double ones[2] = {1.0, 1.0};
  // Four equally likely outcomes: (+-1 +-1)^2 averages to 2.
  CHECK(NoiseLaw::rademacher_product(2).directional_moment(ones, 2) == doctest::Approx(2.0));
  CHECK(NoiseLaw::rademacher_product(2).directional_moment(ones, 4) == doctest::Approx(8.0));
  const double u[2] = {0.3, -1.2};
  CHECK(NoiseLaw::standard_gaussian(2).directional_moment(u, 2) == doctest::Approx(0.09 + 1.44));
  CHECK(noise_directional_moment(uni, u1, 2) == uni.directional_moment(u1, 2));
}

TEST_CASE("directional moments match simulation for a box") {
  const auto law = NoiseLaw::uniform_box({1.0, 2.0});
  const double u[2] = {1.0, 0.5};
  RandomStream s(9, 0);
  const std::size_t n = 400'000;
  const auto xs = law.sample(s, n);
  double m4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = u[0] * xs[2 * i] + u[1] * xs[2 * i + 1];
    m4 += p * p * p * p;
  }
  CHECK(m4 / n == doctest::Approx(law.directional_moment(u, 4)).epsilon(0.02));
}

TEST_CASE("noise construction errors") {
  CHECK_THROWS_AS(NoiseLaw::uniform_interval(-1.0, 2.0), Error);
  CHECK_THROWS_AS(NoiseLaw::finite_discrete({{1.0}, {2.0}}, {0.5, 0.5}), Error);
  CHECK_THROWS_WITH(NoiseLaw::finite_discrete({{-1.0}, {1.0}}, {0.5, 0.4}), doctest::Contains("probabilities must sum to 1"));
  CHECK_THROWS_AS(NoiseLaw::standard_gaussian(0), Error);
  CHECK_THROWS_AS(NoiseLaw::finite_discrete({{-1.0, 0.0}, {1.0, 0.0}}, {0.5, 0.5}).covariance(), Error);
}

TEST_CASE("support and norms") {
  const auto [lo, hi] = NoiseLaw::uniform_interval(-2.0, 2.0).support_1d();
  CHECK(lo == -2.0);
  CHECK(hi == 2.0);
  CHECK(std::isinf(NoiseLaw::standard_gaussian(1).max_norm()));
  CHECK(NoiseLaw::rademacher_product(2).max_norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(NoiseLaw::uniform_interval(-1.0, 1.0).has_density());
  CHECK_FALSE(NoiseLaw::rademacher_product(1).has_density());
}
