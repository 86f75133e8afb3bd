#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "restartar/stats.hpp"

using namespace restartar;

TEST_CASE("ks of a quantile sample") {
  const int n = 100;
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back((i + 0.5) / n);
  const CandidateCdf uniform{[](double x) { return std::clamp(x, 0.0, 1.0); }, {}};
  CHECK(ks_distance(xs, uniform) == doctest::Approx(0.5 / n));
}

TEST_CASE("ks with an atom") {
  const std::vector<double> zeros(50, 0.0);
  const ProjectionLaw degenerate{1.0, 0.5, 0.5, 1.0};
  CHECK(ks_distance(zeros, mixture_cdf(degenerate)) == doctest::Approx(0.0));
  // Half the sample at the atom, half spread: the atom jump must be matched.
  const ProjectionLaw mixed{1.0, 1.0, 0.0, 0.5};
  const auto candidate = mixture_cdf(mixed);
  CHECK(candidate.cdf(0.0) == doctest::Approx(0.5));
  CHECK(candidate.left_limit(0.0) == doctest::Approx(0.0));
  CHECK(ks_distance(zeros, candidate) == doctest::Approx(0.5));
}

TEST_CASE("mixture cdf with both signs") {
  const ProjectionLaw law{2.0, 0.25, 0.75, 0.2};
  const auto F = mixture_cdf(law);
  CHECK(F.cdf(-1e9) == doctest::Approx(0.0));
  CHECK(F.cdf(1e9) == doctest::Approx(1.0));
  CHECK(F.left_limit(0.0) == doctest::Approx(0.8 * 0.75));
  CHECK(F.cdf(0.0) == doctest::Approx(0.8 * 0.75 + 0.2));
  const double x = 1.5;
  const double half_normal = std::erf(x / (2.0 * std::sqrt(2.0)));
  CHECK(F.cdf(x) == doctest::Approx(0.6 + 0.2 + 0.8 * 0.25 * half_normal));
}

TEST_CASE("normal candidate and ecdf") {
  const auto N = normal_cdf_candidate(1.0, 2.0);
  CHECK(N.cdf(1.0) == doctest::Approx(0.5));
  const std::vector<double> xs{3.0, 1.0, 2.0, 2.0};
  const EcdfView F(xs);
  CHECK(F(2.0) == 0.75);
  CHECK(F.left_limit(2.0) == 0.25);
  CHECK(F(0.0) == 0.0);
  CHECK(ks_distance(xs, ecdf_candidate(xs)) == doctest::Approx(0.0));
}

TEST_CASE("two-sample ks") {
  const std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, 5.0};
  CHECK(ks_two_sample(a, b) == doctest::Approx(1.0));
  CHECK(ks_two_sample(a, a) == doctest::Approx(0.0));
  const std::vector<double> c{1.5, 2.5, 3.5};
  CHECK(ks_two_sample(a, c) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("empirical characteristic function") {
  const std::vector<double> xs{-1.0, 1.0};
  const std::vector<double> ts{0.0, 0.7, 2.0};
  const auto phi = empirical_cf(xs, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(phi[i].real() == doctest::Approx(std::cos(ts[i])));
    CHECK(std::abs(phi[i].imag()) < 1e-15);
  }
}
