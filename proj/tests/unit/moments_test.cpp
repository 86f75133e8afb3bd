#include <doctest.h>

#include <cmath>

#include "restartar/moments.hpp"

using namespace restartar;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("gaussian moments from the recursion") {
  const LimitLaw law(0.5, MatrixXd::Identity(1, 1), VectorXd::Zero(1), 1.0);
  const double u = 1.0;
  const auto t = moment_recursion(law, {&u, 1}, 6);
  REQUIRE(t.values.size() == 7);
  CHECK(t.values[0] == 1.0);
  CHECK(t.values[1] == 0.0);
  CHECK(t.values[2] == doctest::Approx(1.0));
  CHECK(t.values[4] == doctest::Approx(3.0));
  CHECK(t.values[6] == doctest::Approx(15.0));
  CHECK(t.source == "analytic-recursion");
}

TEST_CASE("third moment") {
  const double a = 1.3, sigma = 0.8, c = 0.2;
  const LimitLaw law(a, MatrixXd::Constant(1, 1, sigma), VectorXd::Constant(1, c), 1.0);
  const double u = 1.0;
  const auto t = moment_recursion(law, {&u, 1}, 3);
  CHECK(t.values[1] == doctest::Approx(c));
  CHECK(t.values[3] == doctest::Approx(sigma * c / a));
}

TEST_CASE("moment inequality") {
  const auto bad = moment_inequality_check(1.0, 0.1, 1.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.slack == doctest::Approx(1.0 - std::sqrt(2.0 / M_PI) * 0.1));
  // Boundary law: |mu1| = sqrt(2/(pi s)) mu2 up to rounding.
  const double a = 1.0;
  const LimitLaw law(a, MatrixXd::Identity(1, 1), VectorXd::Constant(1, 1.0 / std::sqrt(M_PI)), 1.0);
  const double u = 1.0;
  const auto t = moment_recursion(law, {&u, 1}, 2);
  const auto edge = moment_inequality_check(t.values[1], t.values[2], 1.0 / (2.0 * a));
  CHECK(edge.pass);
  CHECK(std::abs(edge.slack) < 1e-12);
  CHECK(moment_inequality_check(0.0, 0.5, 1.0).pass);
}

TEST_CASE("empirical moments of a gaussian sample") {
  RandomStream s(6, 0);
  std::vector<double> xs(100'000);
  for (auto& x : xs) x = s.normal();
  const double u = 1.0;
  const auto t = empirical_moments(xs, {&u, 1}, 4);
  CHECK(t.source == "empirical");
  CHECK(t.n == xs.size());
  const double truth[] = {1.0, 0.0, 1.0, 0.0, 3.0};
  for (int k = 1; k <= 4; ++k) {
    CHECK(t.stderrs[k] > 0.0);
    CHECK(std::abs(t.values[k] - truth[k]) < 4.0 * t.stderrs[k]);
  }
}
