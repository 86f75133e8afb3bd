#include <doctest.h>

#include <cmath>

#include "restartar/error.hpp"
#include "restartar/special.hpp"

using namespace restartar;

TEST_CASE("dawson against high-precision reference values") {
  // mpmath, 30 digits: sqrt(pi)/2 exp(-x^2) erfi(x)
  const double ref[][2] = {{0.5, 0.42443638350202229593}, {1.0, 0.53807950691276841914},
                           {2.0, 0.30134038892379196603}, {5.0, 0.10213407442427683544},
                           {10.0, 0.050253847187598528033}, {50.0, 0.010002001201201683031}};
  for (const auto& r : ref) {
    CHECK(dawson(r[0]) == doctest::Approx(r[1]).epsilon(1e-14));
    CHECK(dawson(-r[0]) == doctest::Approx(-r[1]).epsilon(1e-14));
  }
  CHECK(dawson(0.0) == 0.0);
}

TEST_CASE("dawson satisfies D' = 1 - 2 x D") {
  for (double x = -8.0; x <= 8.0; x += 0.37) {
    const double step = 1e-5;
    const double derivative = (dawson(x + step) - dawson(x - step)) / (2.0 * step);
    CHECK(derivative == doctest::Approx(1.0 - 2.0 * x * dawson(x)).epsilon(1e-7));
  }
}

TEST_CASE("h derivative examples") {
  CHECK(h_derivative(0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(h_derivative(1, 1.0) == doctest::Approx(-1.5 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(h_derivative(2, 1.0) == doctest::Approx(2.75 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(h_derivative(1, 1.0) == doctest::Approx(-0.5518192).epsilon(1e-7));
  CHECK(h_derivative(2, 1.0) == doctest::Approx(1.0116685).epsilon(1e-7));
}

TEST_CASE("h derivative agrees with central differences of the previous order") {
  for (int k = 1; k <= 6; ++k)
    for (double s : {0.1, 1.0, 10.0}) {
      const double step = 1e-5 * s;
      const double fd = (h_derivative(k - 1, s + step) - h_derivative(k - 1, s - step)) / (2.0 * step);
      CHECK(h_derivative(k, s) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("h derivative rejects s <= 0 and negative order") {
  CHECK_THROWS_AS(h_derivative(1, 0.0), Error);
  CHECK_THROWS_AS(h_derivative(1, -1.0), Error);
  CHECK_THROWS_AS(h_derivative_coefficients(-1), Error);
}

TEST_CASE("ball volumes and double factorials") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
  CHECK(double_factorial(-1) == 1.0);
  CHECK(double_factorial(0) == 1.0);
  CHECK(double_factorial(5) == 15.0);
  CHECK(double_factorial(6) == 48.0);
  CHECK(normal_cdf(0.0) == 0.5);
}
