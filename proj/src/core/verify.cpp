#include "restartar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "restartar/chain.hpp"
#include "restartar/commands.hpp"
#include "restartar/csv.hpp"
#include "restartar/error.hpp"
#include "restartar/limit_law.hpp"
#include "restartar/moments.hpp"
#include "restartar/scenarios.hpp"
#include "restartar/special.hpp"
#include "restartar/stats.hpp"

namespace restartar {
namespace {

using nlohmann::json;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kAcceptanceTag = 0x4143434550540000ULL;

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, tol);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

CriterionResult make(int id, bool pass, const std::string& summary, json details = json::object()) {
  return {id, criterion_name(id), pass, summary, std::move(details)};
}

RandomStream criterion_stream(std::uint64_t seed, int id) {
  return RandomStream(seed, kAcceptanceTag).substream(static_cast<std::uint64_t>(id));
}

std::vector<double> first_coordinates(const StationarySample& s) {
  std::vector<double> out(s.states.size() / s.dimension);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.states[i * s.dimension];
  return out;
}

// N(0, s^2) and |N(0, s^2)| CDFs straight from erf.
CandidateCdf gaussian_oracle(double s) {
  return {[s](double x) { return 0.5 * std::erfc(-x / (s * std::numbers::sqrt2)); }, {}};
}

CandidateCdf half_normal_oracle(double s) {
  return {[s](double x) { return x <= 0.0 ? 0.0 : std::erf(x / (s * std::numbers::sqrt2)); }, {}};
}

// E exp(i t |N|) by quadrature of the half-normal density.
cplx half_normal_cf_oracle(double t) {
  const double im = integrate([t](double x) { return 2.0 * std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi) * std::sin(t * x); },
                              0.0, 40.0, 1e-15);
  return {std::exp(-0.5 * t * t), im};
}

struct RandomLaw {
  double a;
  Eigen::MatrixXd sigma;
  Eigen::VectorXd mu;
  double p;
};

// Feasible law with pi a mu' Sigma^-1 mu = (fraction p)^2.
RandomLaw random_law(RandomStream& rng, int d, double fraction) {
  RandomLaw law;
  Eigen::MatrixXd b(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) b(i, k) = 2.0 * rng.uniform() - 1.0;
  law.sigma = b * b.transpose() + 0.2 * Eigen::MatrixXd::Identity(d, d);
  law.a = 0.5 + 1.5 * rng.uniform();
  law.p = 0.2 + 0.8 * rng.uniform();
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w[i] = rng.normal();
  const Eigen::VectorXd sw = law.sigma * w;
  law.mu = sw * (fraction * law.p / std::sqrt(kPi * law.a * w.dot(sw)));
  return law;
}

LimitLaw build(const RandomLaw& r) { return LimitLaw(r.a, r.sigma, r.mu, r.p); }

CriterionResult ks_criterion(int id, const std::string& preset, StationaryOptions options, const CandidateCdf& oracle,
                             std::uint64_t seed, int threads, json extra = json::object()) {
  options.threads = threads;
  const auto f = example_family(preset);
  const std::int64_t m = 10'000;
  const auto sample = stationary_sample(f, m, 100'000, options, criterion_stream(seed, id));
  const auto y = first_coordinates(sample);
  const double ks = ks_distance(y, oracle);
  const double lowest = *std::min_element(y.begin(), y.end());
  json details{{"m", m}, {"samples", y.size()}, {"thin", sample.thin}, {"ks", ks}, {"threshold", 0.02}, {"min", lowest}};
  for (auto& [k, v] : extra.items()) details[k] = v;
  bool pass = ks < 0.02;
  std::string summary = "KS " + fmt(ks) + " < 0.02";
  if (id == 2) {
    const double gamma = f.gamma.value(m);
    pass = pass && lowest >= -gamma;
    details["minus_gamma"] = -gamma;
    summary += ", min " + fmt(lowest) + " >= " + fmt(-gamma);
  }
  return make(id, pass, summary, details);
}

CriterionResult criterion_1(std::uint64_t seed, int threads) {
  return ks_criterion(1, "example-1.1", {}, gaussian_oracle(std::sqrt(1.0 / 6.0)), seed, threads);
}

CriterionResult criterion_2(std::uint64_t seed, int threads) {
  return ks_criterion(2, "example-1.2", {}, half_normal_oracle(std::sqrt(1.0 / 6.0)), seed, threads);
}

CriterionResult criterion_3(std::uint64_t seed, int threads) {
  StationaryOptions options;
  options.mode = StationaryMode::LongRun;
  options.chain = ChainKind::X;
  return ks_criterion(3, "no-truncation", options, gaussian_oracle(std::sqrt(1.0 / 6.0)), seed, threads);
}

CriterionResult criterion_4(std::uint64_t seed, int threads) {
  const auto f = example_family("example-2");
  StationaryOptions options;
  options.threads = threads;
  json rows = json::array();
  std::vector<double> second;
  for (std::int64_t m : {100, 1'000, 10'000}) {
    const auto sample = stationary_sample(f, m, 100'000, options, criterion_stream(seed, 4).substream(m));
    const auto y = first_coordinates(sample);
    double s2 = 0.0;
    for (double v : y) s2 += v * v;
    s2 /= static_cast<double>(y.size());
    second.push_back(s2);
    rows.push_back({{"m", m}, {"second_moment", s2}, {"cycles", sample.cycles}, {"max_abs", std::max(
        std::abs(*std::min_element(y.begin(), y.end())), std::abs(*std::max_element(y.begin(), y.end())))}});
  }
  const bool decreasing = second[1] < second[0] && second[2] < second[1];
  const bool small = second[2] < 0.01;
  return make(4, decreasing && small,
              "E Y^2 = " + fmt(second[0]) + ", " + fmt(second[1]) + ", " + fmt(second[2]) +
                  (decreasing ? " (decreasing)" : " (not decreasing)") + ", last < 0.01: " + (small ? "yes" : "no"),
              {{"per_m", rows}, {"strictly_decreasing", decreasing}, {"below_threshold", small}});
}

CriterionResult criterion_5(std::uint64_t seed, int) {
  auto rng = criterion_stream(seed, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 3;
    const double fraction = trial % 10 == 0 ? 1.0 : (trial % 10 == 1 ? 0.0 : rng.uniform());
    const auto r = random_law(rng, d, fraction);
    const auto law = build(r);
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    const double t = -4.0 + 8.0 * rng.uniform();
    const Eigen::VectorXd tv = t * v;
    const cplx lhs = law.cf(std::span<const double>(tv.data(), d));
    // Signed half-normal mixture whose mean matches <v, mu>.
    const double vsv = v.dot(r.sigma * v);
    const double s = std::sqrt(vsv / (2.0 * r.a));
    const double plus = r.p / 2.0 + std::sqrt(kPi * r.a) * v.dot(r.mu) / (2.0 * std::sqrt(vsv));
    const double minus = r.p - plus;
    const cplx g = half_normal_cf_oracle(s * t);
    const cplx rhs = (1.0 - r.p) + plus * g + minus * std::conj(g);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return make(5, worst < 1e-10, "max |cf - mixture cf| " + fmt(worst) + " < 1e-10", {{"max_error", worst}, {"trials", 100}});
}

struct DensityCase {
  std::string label;
  LimitLaw law;
};

std::vector<DensityCase> density_cases() {
  std::vector<DensityCase> cases;
  auto one = [](double a, double s2, double p, double fraction) {
    Eigen::MatrixXd sigma(1, 1);
    sigma(0, 0) = s2;
    Eigen::VectorXd mu(1);
    mu[0] = fraction * p * std::sqrt(s2) / std::sqrt(kPi * a);
    return LimitLaw(a, sigma, mu, p);
  };
  cases.push_back({"d1-centred", one(1.0, 1.0 / 3.0, 1.0, 0.0)});
  cases.push_back({"d1-interior", one(1.3, 0.7, 0.6, 0.5)});
  cases.push_back({"d1-boundary", one(1.0, 1.0 / 3.0, 0.8, 1.0)});
  cases.push_back({"d1-boundary-negative", one(0.7, 2.0, 1.0, -1.0)});
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1.0, 0.3, 0.3, 0.5;
  const double a = 1.5;
  auto two = [&](double p, double fraction) {
    Eigen::VectorXd w(2);
    w << 0.8, -0.6;
    const Eigen::VectorXd sw = sigma * w;
    return LimitLaw(a, sigma, sw * (fraction * p / std::sqrt(kPi * a * w.dot(sw))), p);
  };
  cases.push_back({"d2-centred", two(1.0, 0.0)});
  cases.push_back({"d2-interior", two(0.8, 0.5)});
  cases.push_back({"d2-boundary", two(0.8, 1.0)});
  return cases;
}

double total_mass_1d(const LimitLaw& law, double L) {
  auto f = [&](double x) { return law.pdf(std::span<const double>(&x, 1)); };
  return integrate(f, -L, 0.0) + integrate(f, 0.0, L);
}

// Polar integration over the box [-L, L]^2; the Jacobian r absorbs the 1/r
// behaviour of the correction term at the origin.
double total_mass_2d(const LimitLaw& law, double L) {
  auto radial = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double rmax = std::min(L / std::max(std::abs(c), 1e-300), L / std::max(std::abs(s), 1e-300));
    return integrate(
        [&](double r) {
          const double x[2] = {r * c, r * s};
          return law.pdf(x) * r;
        },
        0.0, rmax, 1e-12);
  };
  double total = 0.0;
  for (int k = 0; k < 8; ++k) total += integrate(radial, -kPi + k * kPi / 4, -kPi + (k + 1) * kPi / 4, 1e-11);
  return total;
}

CriterionResult criterion_6(std::uint64_t seed, int) {
  auto rng = criterion_stream(seed, 6);
  json rows = json::array();
  bool pass = true;
  double worst_mass = 0.0, worst_min = 0.0, worst_fourier = 0.0;
  for (const auto& c : density_cases()) {
    const auto& law = c.law;
    const int d = law.dimension();
    const double spread = std::sqrt(law.sigma().eigenvalues().real().maxCoeff() / (2.0 * law.drift()));
    const double mass = d == 1 ? total_mass_1d(law, 14.0 * spread) : total_mass_2d(law, 9.0 * spread);
    double lowest = std::numeric_limits<double>::infinity();
    std::vector<double> x(d);
    for (int i = 0; i < 10'000; ++i) {
      for (auto& xi : x) xi = spread * (8.0 * rng.uniform() - 4.0);
      lowest = std::min(lowest, law.pdf(x));
    }
    json row{{"law", c.label}, {"mass", mass}, {"min_density", lowest}};
    bool ok = std::abs(mass - 1.0) <= 1e-6 && lowest >= -1e-12;
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    worst_min = std::min(worst_min, lowest);
    if (d == 1) {
      const double L = 14.0 * spread;
      double err = 0.0;
      for (int k = 0; k <= 40; ++k) {
        const double u = -10.0 + 0.5 * k;
        auto pdf = [&](double t) { return law.pdf(std::span<const double>(&t, 1)); };
        const double re = integrate([&](double t) { return pdf(t) * std::cos(u * t); }, -L, 0.0) +
                          integrate([&](double t) { return pdf(t) * std::cos(u * t); }, 0.0, L);
        const double im = integrate([&](double t) { return pdf(t) * std::sin(u * t); }, -L, 0.0) +
                          integrate([&](double t) { return pdf(t) * std::sin(u * t); }, 0.0, L);
        err = std::max(err, std::abs(cplx(re, im) - law.cf_continuous(std::span<const double>(&u, 1))));
      }
      row["fourier_error"] = err;
      ok = ok && err < 1e-6;
      worst_fourier = std::max(worst_fourier, err);
    }
    row["pass"] = ok;
    pass = pass && ok;
    rows.push_back(row);
  }
  return make(6, pass,
              "max |mass - 1| " + fmt(worst_mass) + " <= 1e-6, min pdf " + fmt(worst_min) +
                  " >= -1e-12, max Fourier error " + fmt(worst_fourier) + " < 1e-6",
              {{"laws", rows}});
}

CriterionResult criterion_7(std::uint64_t seed, int) {
  auto rng = criterion_stream(seed, 7);
  const auto r3 = random_law(rng, 3, 0.9);
  const LimitLaw law3 = build(r3);
  const LimitLaw law2(r3.a, r3.sigma.topLeftCorner(2, 2), r3.mu.head(2), r3.p);
  const Eigen::MatrixXd prec = r3.sigma.inverse();
  const double zsd = 1.0 / std::sqrt(2.0 * r3.a * prec(2, 2));
  const double spread = std::sqrt(r3.sigma.eigenvalues().real().maxCoeff() / (2.0 * r3.a));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x0 = spread * (5.0 * rng.uniform() - 2.5);
    const double x1 = spread * (5.0 * rng.uniform() - 2.5);
    const double centre = -(prec(2, 0) * x0 + prec(2, 1) * x1) / prec(2, 2);
    auto f = [&](double z) {
      const double x[3] = {x0, x1, z};
      return law3.pdf(x);
    };
    const double marginal = integrate(f, centre - 16.0 * zsd, centre, 1e-14) + integrate(f, centre, centre + 16.0 * zsd, 1e-14);
    const double x2[2] = {x0, x1};
    const double direct = law2.pdf(x2);
    worst = std::max(worst, std::abs(marginal - direct) / std::max(1.0, std::abs(direct)));
  }
  return make(7, worst < 1e-8, "max |pdf_2 - marginal pdf_3| " + fmt(worst) + " < 1e-8", {{"max_error", worst}, {"points", 100}});
}

// k-th derivative of e^{-s} s^{-1/2} by the Leibniz rule.
double h_leibniz(int k, double s) {
  double total = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    double power = 1.0;  // d^j/ds^j s^{-1/2} = power * s^{-1/2-j}
    for (int i = 0; i < j; ++i) power *= -(0.5 + i);
    total += binom * ((k - j) % 2 ? -1.0 : 1.0) * power * std::pow(s, -0.5 - j);
    binom = binom * (k - j) / (j + 1);
  }
  return total * std::exp(-s);
}

CriterionResult criterion_8(std::uint64_t, int) {
  const double step = 1e-5;
  double worst = 0.0;
  json rows = json::array();
  for (int k = 0; k <= 6; ++k)
    for (double s : {0.1, 1.0, 10.0}) {
      const double value = h_derivative(k, s);
      const double reference =
          k == 0 ? std::exp(-s) / std::sqrt(s) : (h_leibniz(k - 1, s + step) - h_leibniz(k - 1, s - step)) / (2.0 * step);
      const double rel = std::abs(value - reference) / std::abs(reference);
      worst = std::max(worst, rel);
      rows.push_back({{"k", k}, {"s", s}, {"value", value}, {"finite_difference", reference}, {"relative_error", rel}});
    }
  return make(8, worst < 1e-6, "max relative error " + fmt(worst) + " < 1e-6", {{"cases", rows}});
}

CriterionResult criterion_9(std::uint64_t seed, int threads) {
  const double a = 1.0, s2 = 1.0 / 3.0, p = 0.8;
  Eigen::MatrixXd sigma(1, 1);
  sigma(0, 0) = s2;
  Eigen::VectorXd mu(1);
  mu[0] = p * std::sqrt(s2) / std::sqrt(kPi * a);
  const LimitLaw law(a, sigma, mu, p);
  const double u = 1.0;
  const auto analytic = moment_recursion(law, std::span<const double>(&u, 1), 6);
  const double L = 14.0 * std::sqrt(s2 / (2.0 * a));
  double worst = 0.0;
  json quad = json::array();
  for (int k = 0; k <= 6; ++k) {
    auto f = [&](double x) { return std::pow(x, k) * law.pdf(std::span<const double>(&x, 1)); };
    const double zk = integrate(f, -L, 0.0) + integrate(f, 0.0, L);
    const double yk = k == 0 ? 1.0 : p * zk;
    const double err = std::abs(yk - analytic.values[k]) / std::max(1.0, std::abs(analytic.values[k]));
    worst = std::max(worst, err);
    quad.push_back({{"k", k}, {"recursion", analytic.values[k]}, {"quadrature", yk}});
  }

  // Example 1.1 samples against N(0, 1/6) moments.
  StationaryOptions options;
  options.threads = threads;
  const auto sample = stationary_sample(example_family("example-1.1"), 10'000, 100'000, options, criterion_stream(seed, 9));
  const auto y = first_coordinates(sample);
  const auto empirical = empirical_moments(y, std::span<const double>(&u, 1), 4);
  const LimitLaw normal(1.0, Eigen::MatrixXd::Constant(1, 1, 1.0 / 3.0), Eigen::VectorXd::Zero(1), 1.0);
  const auto expected = moment_recursion(normal, std::span<const double>(&u, 1), 4);
  double worst_z = 0.0;
  json emp = json::array();
  for (int k = 1; k <= 4; ++k) {
    const double z = std::abs(empirical.values[k] - expected.values[k]) / empirical.stderrs[k];
    worst_z = std::max(worst_z, z);
    emp.push_back({{"k", k},
                   {"recursion", expected.values[k]},
                   {"empirical", empirical.values[k]},
                   {"stderr", empirical.stderrs[k]},
                   {"z", z}});
  }
  return make(9, worst < 1e-8 && worst_z <= 4.0,
              "quadrature error " + fmt(worst) + " < 1e-8, max |z| " + fmt(worst_z) + " <= 4",
              {{"quadrature", quad}, {"empirical", emp}});
}

CriterionResult criterion_10(std::uint64_t seed, int) {
  auto rng = criterion_stream(seed, 10);
  int failures = 0;
  double max_slack = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1'000; ++i) {
    const int d = 1 + i % 3;
    const auto r = random_law(rng, d, rng.uniform());
    const auto law = build(r);
    Eigen::VectorXd u(d);
    for (int j = 0; j < d; ++j) u[j] = rng.normal();
    const auto mt = moment_recursion(law, std::span<const double>(u.data(), d), 2);
    const auto v = moment_inequality_check(mt.values[1], mt.values[2], u.dot(r.sigma * u) / (2.0 * r.a));
    failures += v.pass ? 0 : 1;
    max_slack = std::max(max_slack, v.slack);
  }
  const double a = 1.0, s2 = 1.0 / 3.0;
  const LimitLaw boundary(a, Eigen::MatrixXd::Constant(1, 1, s2),
                          Eigen::VectorXd::Constant(1, std::sqrt(s2) / std::sqrt(kPi * a)), 1.0);
  const double u = 1.0;
  const auto mt = moment_recursion(boundary, std::span<const double>(&u, 1), 2);
  const auto v = moment_inequality_check(mt.values[1], mt.values[2], s2 / (2.0 * a));
  const bool pass = failures == 0 && std::abs(v.slack) <= 1e-12;
  return make(10, pass,
              std::to_string(failures) + " failures in 1000 laws, boundary slack " + fmt(v.slack) + " within 1e-12",
              {{"failures", failures}, {"max_slack", max_slack}, {"boundary_slack", v.slack}});
}

CriterionResult criterion_11(std::uint64_t seed, int) {
  bool pass = true;
  json rows = json::array();
  for (double alpha : {0.25, 0.3, 0.49}) {
    const double bound = (1.0 - 2.0 * alpha) / (1.0 - alpha);
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t run = 0; run < 10; ++run) {
      auto stream = criterion_stream(seed, 11).substream(static_cast<std::uint64_t>(alpha * 1000)).substream(run);
      const auto r = non_hitting_counterexample(alpha, 0.5 * bound, 100'000, stream);
      worst = std::min(worst, r.min_abs);
    }
    const bool ok = worst >= bound - 1e-12;
    pass = pass && ok;
    rows.push_back({{"alpha", alpha}, {"bound", bound}, {"min_abs", worst}, {"pass", ok}});
  }
  return make(11, pass, "min |Z_t| above (1 - 2 alpha)/(1 - alpha) in all 30 runs: " + std::string(pass ? "yes" : "no"),
              {{"alphas", rows}});
}

CriterionResult criterion_12(std::uint64_t seed, int threads) {
  const auto f = example_family("gamma-search");
  GammaSearchOptions options;
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) options.targets.push_back(x / std::sqrt(kPi));
  options.threads = threads;
  const auto entries = gamma_search(f, options, criterion_stream(seed, 12));
  double worst = 0.0;
  bool pass = true;
  json rows = json::array();
  for (const auto& e : entries) {
    const double miss = std::max(std::abs(e.achieved - e.target), std::abs(e.validated - e.target));
    worst = std::max(worst, e.ok ? miss : std::numeric_limits<double>::infinity());
    pass = pass && e.ok && miss < 0.02;
    rows.push_back(to_json(e));
  }
  return make(12, pass, "max |E Y - target| " + fmt(worst) + " < 0.02", {{"entries", rows}});
}

CriterionResult criterion_13(std::uint64_t seed, int threads) {
  const auto f = example_family("example-1.1");
  const std::int64_t m = 1'000;
  StationaryOptions pool;
  pool.thin = 2 * m;
  pool.threads = threads;
  StationaryOptions run = pool;
  run.mode = StationaryMode::LongRun;
  const auto a = stationary_sample(f, m, 100'000, pool, criterion_stream(seed, 13).substream(1));
  const auto b = stationary_sample(f, m, 100'000, run, criterion_stream(seed, 13).substream(2));
  const double ks = ks_two_sample(first_coordinates(a), first_coordinates(b));
  return make(13, ks < 0.01, "two-sample KS " + fmt(ks) + " < 0.01", {{"ks", ks}, {"m", m}, {"thin", pool.thin}});
}

CriterionResult criterion_14(std::uint64_t, int) {
  CommandArgs args;
  args.positional = {"example-1.1"};
  args.seed = 42;
  args.threads = 1;
  const auto one = run_command("scenario", args, std::nullopt);
  args.threads = 8;
  const auto eight = run_command("scenario", args, std::nullopt);
  const bool same = one.exit_code == eight.exit_code && one.report == eight.report && one.tables == eight.tables &&
                    !one.report.empty();
  return make(14, same, std::string("reports with 1 and 8 threads byte-identical: ") + (same ? "yes" : "no"),
              {{"bytes", one.report.size()}, {"exit_code", one.exit_code}});
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"example-1.1-normal-limit",   "example-1.2-half-normal-limit",
                                "no-restart-normal-limit",    "example-2-degeneracy",
                                "cf-ray-identity",            "density-validity",
                                "odd-even-bridge",            "h-derivative-oracle",
                                "moment-recursion",           "moment-inequality",
                                "non-hitting-counterexample", "gamma-search-targets",
                                "regenerative-consistency",   "thread-determinism"};
  if (id < 1 || id > kCriterionCount) fail(ErrorKind::InvalidArgument, "criterion id must lie in 1..14");
  return names[id - 1];
}

CriterionResult run_criterion(int id, std::uint64_t seed, int threads) {
  switch (id) {
    case 1: return criterion_1(seed, threads);
    case 2: return criterion_2(seed, threads);
    case 3: return criterion_3(seed, threads);
    case 4: return criterion_4(seed, threads);
    case 5: return criterion_5(seed, threads);
    case 6: return criterion_6(seed, threads);
    case 7: return criterion_7(seed, threads);
    case 8: return criterion_8(seed, threads);
    case 9: return criterion_9(seed, threads);
    case 10: return criterion_10(seed, threads);
    case 11: return criterion_11(seed, threads);
    case 12: return criterion_12(seed, threads);
    case 13: return criterion_13(seed, threads);
    case 14: return criterion_14(seed, threads);
    default: fail(ErrorKind::InvalidArgument, "criterion id must lie in 1..14");
  }
}

}  // namespace restartar
