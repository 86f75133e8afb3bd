#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "restartar/error.hpp"
#include "restartar/limit_law.hpp"

using namespace restartar;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

LimitLaw law_1d(double a, double sigma, double mu, double p) {
  return LimitLaw(a, MatrixXd::Constant(1, 1, sigma), VectorXd::Constant(1, mu), p);
}

// Composite Simpson, n even.
double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("centred gaussian limit") {
  const auto law = law_1d(1.0, 1.0, 0.0, 1.0);
  const double zero = 0.0;
  CHECK(law.pdf({&zero, 1}) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-13));
  for (double x : {0.3, 1.0, 2.5}) CHECK(law.pdf({&x, 1}) == doctest::Approx(std::exp(-x * x) / std::sqrt(M_PI)));
  const auto half = law_1d(0.5, 1.0, 0.0, 1.0);
  const double one = 1.0;
  const auto c = half.cf({&one, 1});
  CHECK(c.real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(std::abs(c.imag()) < 1e-15);
}

TEST_CASE("feasibility boundary") {
  const auto boundary = law_1d(1.0, 1.0, 1.0 / std::sqrt(M_PI), 1.0);
  CHECK(boundary.feasibility_ratio() == doctest::Approx(1.0).epsilon(1e-14));
  const double x = 0.3;
  CHECK(boundary.pdf({&x, 1}) == doctest::Approx(2.0 / std::sqrt(M_PI) * std::exp(-0.09)).epsilon(1e-10));
  const double neg = -0.3;
  CHECK(std::abs(boundary.pdf({&neg, 1})) < 1e-12);
  try {
    law_1d(1.0, 1.0, 0.6, 1.0);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
    CHECK(std::string(e.what()).find("1.063") != std::string::npos);
  }
  CHECK_THROWS_AS(law_1d(1.0, 1.0, 0.1, 0.0), Error);
  CHECK_NOTHROW(law_1d(1.0, 1.0, 0.0, 0.0));
  CHECK_THROWS_AS(law_1d(0.0, 1.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(law_1d(1.0, 1.0, 0.0, 1.5), Error);
}

TEST_CASE("one-dimensional pdf transforms to the cf") {
  const auto law = law_1d(0.7, 1.3, 0.25, 0.9);
  for (double t : {-2.0, 0.3, 1.0, 4.0}) {
    // The density jumps at 0; integrate each half separately.
    auto part = [&](double lo, double hi, bool imag) {
      return simpson(
          [&](double x) {
            const double f = law.pdf({&x, 1});
            return imag ? f * std::sin(t * x) : f * std::cos(t * x);
          },
          lo, hi, 4000);
    };
    const std::complex<double> transform(part(-12.0, 0.0, false) + part(0.0, 12.0, false),
                                         part(-12.0, 0.0, true) + part(0.0, 12.0, true));
    CHECK(std::abs(transform - law.cf_continuous({&t, 1})) < 1e-10);
  }
}

TEST_CASE("cf of the full law includes the atom") {
  const auto law = law_1d(1.0, 1.0, 0.2, 0.6);
  for (double t : {0.0, 0.5, 2.0}) {
    const auto full = law.cf({&t, 1});
    const auto cont = law.cf_continuous({&t, 1});
    CHECK(std::abs(full - (0.4 + 0.6 * cont)) < 1e-14);
  }
}

TEST_CASE("two-dimensional density is the marginal of the three-dimensional one") {
  MatrixXd s3 = MatrixXd::Identity(3, 3);
  VectorXd mu3(3);
  mu3 << 0.1, 0.0, 0.0;
  const LimitLaw law3(1.0, s3, mu3, 1.0);
  const LimitLaw law2(1.0, MatrixXd::Identity(2, 2), mu3.head(2), 1.0);
  const double x2[2] = {0.5, 0.5};
  const double marginal = simpson(
      [&](double z) {
        const double x[3] = {0.5, 0.5, z};
        return law3.pdf(x);
      },
      -9.0, 9.0, 3600);
  CHECK(law2.pdf(x2) == doctest::Approx(marginal).epsilon(1e-9));
}

TEST_CASE("projection law of the centred case") {
  MatrixXd sigma(2, 2);
  sigma << 2.0, 0.5, 0.5, 1.0;
  const LimitLaw law(1.0, sigma, VectorXd::Zero(2), 0.8);
  const double v[2] = {1.0, -1.0};
  const auto proj = law.projection(v);
  CHECK(proj.scale == doctest::Approx(std::sqrt((2.0 - 1.0 + 1.0) / 2.0)));
  CHECK(proj.prob_plus == doctest::Approx(0.5));
  CHECK(proj.prob_minus == doctest::Approx(0.5));
  CHECK(proj.atom_mass == doctest::Approx(0.2));
  for (double t : {0.3, 1.7}) {
    const double u[2] = {t * v[0], t * v[1]};
    CHECK(std::abs(projection_cf(proj, t) - law.cf(u)) < 1e-13);
  }
}

TEST_CASE("half-normal cf against quadrature") {
  for (double t : {0.5, 1.0, 3.0}) {
    const double re = simpson([&](double x) { return std::cos(t * x) * 2.0 * std::exp(-x * x / 2) / std::sqrt(2 * M_PI); },
                                0.0, 12.0, 12000);
    const double im = simpson([&](double x) { return std::sin(t * x) * 2.0 * std::exp(-x * x / 2) / std::sqrt(2 * M_PI); },
                                0.0, 12.0, 12000);
    const auto c = half_normal_cf(t);
    CHECK(c.real() == doctest::Approx(re).epsilon(1e-7));
    CHECK(c.imag() == doctest::Approx(im).epsilon(1e-7));
  }
  const auto big = half_normal_cf(40.0);
  CHECK(std::isfinite(big.real()));
  CHECK(std::isfinite(big.imag()));
}

TEST_CASE("projection sampler matches the projection law") {
  const auto law = law_1d(1.0, 1.0, 0.3, 0.8);
  const double v = 1.0;
  RandomStream s(4, 4);
  const std::size_t n = 200'000;
  const auto xs = law.sample_projection({&v, 1}, n, s);
  const auto proj = law.projection({&v, 1});
  double zeros = 0.0, positives = 0.0;
  for (double x : xs) {
    zeros += x == 0.0;
    positives += x > 0.0;
  }
  CHECK(std::abs(zeros / n - proj.atom_mass) < 0.005);
  CHECK(std::abs(positives / n - (1.0 - proj.atom_mass) * proj.prob_plus) < 0.005);
}

TEST_CASE("no-truncation law") {
  const auto law = no_truncation_law(1.0, MatrixXd::Constant(1, 1, 1.0 / 3.0));
  const double t = 2.0;
  CHECK(law.cf({&t, 1}).real() == doctest::Approx(std::exp(-4.0 / 12.0)));
  CHECK(law.p() == 1.0);
}
