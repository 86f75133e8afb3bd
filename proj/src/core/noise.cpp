#include "restartar/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "restartar/error.hpp"

namespace restartar {
namespace {

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// Moments 0..k of a sum of independent terms, given each term's moments.
std::vector<double> convolve_moments(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (std::size_t j = 0; j <= n; ++j) out[n] += binomial(static_cast<int>(n), static_cast<int>(j)) * a[j] * b[n - j];
  }
  return out;
}

void check_probabilities(const std::vector<double>& probs) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) fail(ErrorKind::InvalidArgument, "probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "probabilities must sum to 1");
}

}  // namespace

NoiseLaw NoiseLaw::standard_gaussian(int dimension) {
  if (dimension < 1) fail(ErrorKind::InvalidArgument, "noise dimension must be >= 1");
  return NoiseLaw(Kind::StandardGaussian, dimension);
}

NoiseLaw NoiseLaw::uniform_interval(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorKind::InvalidArgument, "uniform-interval requires finite lo < hi");
  if (lo != -hi) fail(ErrorKind::InvalidArgument, "uniform-interval noise must be mean zero (lo = -hi)");
  NoiseLaw law(Kind::UniformInterval, 1);
  law.params_ = {lo, hi};
  return law;
}

NoiseLaw NoiseLaw::uniform_box(std::vector<double> half_widths) {
  if (half_widths.empty()) fail(ErrorKind::InvalidArgument, "uniform-box needs at least one half-width");
  for (double h : half_widths)
    if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorKind::InvalidArgument, "uniform-box half-widths must be positive");
  NoiseLaw law(Kind::UniformBox, static_cast<int>(half_widths.size()));
  law.params_ = std::move(half_widths);
  return law;
}

NoiseLaw NoiseLaw::rademacher_product(int dimension) {
  if (dimension < 1) fail(ErrorKind::InvalidArgument, "noise dimension must be >= 1");
  return NoiseLaw(Kind::RademacherProduct, dimension);
}

NoiseLaw NoiseLaw::finite_discrete(std::vector<std::vector<double>> points, std::vector<double> probs) {
  if (points.empty() || points.size() != probs.size())
    fail(ErrorKind::InvalidArgument, "finite-discrete noise needs matching points and probabilities");
  const std::size_t d = points.front().size();
  if (d == 0) fail(ErrorKind::InvalidArgument, "finite-discrete points must be nonempty vectors");
  for (const auto& x : points)
    if (x.size() != d) fail(ErrorKind::InvalidArgument, "finite-discrete points must share one dimension");
  check_probabilities(probs);

  double scale = 0.0;
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] += probs[i] * points[i][j];
      scale = std::max(scale, std::abs(points[i][j]));
    }
  }
  for (double m : mean)
    if (std::abs(m) > 1e-12 * std::max(scale, 1.0))
      fail(ErrorKind::InvalidArgument, "finite-discrete noise must have mean zero");

  NoiseLaw law(Kind::FiniteDiscrete, static_cast<int>(d));
  law.points_ = std::move(points);
  law.probs_ = std::move(probs);
  law.cumulative_.resize(law.probs_.size());
  std::partial_sum(law.probs_.begin(), law.probs_.end(), law.cumulative_.begin());
  law.cumulative_.back() = 1.0;
  return law;
}

void NoiseLaw::draw(RandomStream& stream, std::span<double> out) const {
  switch (kind_) {
    case Kind::StandardGaussian:
      for (auto& x : out) x = stream.normal();
      return;
    case Kind::UniformInterval:
      out[0] = params_[0] + (params_[1] - params_[0]) * stream.uniform();
      return;
    case Kind::UniformBox:
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = params_[j] * (2.0 * stream.uniform() - 1.0);
      return;
    case Kind::RademacherProduct:
      for (auto& x : out) x = (stream.next_u32() & 1U) ? 1.0 : -1.0;
      return;
    case Kind::FiniteDiscrete: {
      const double u = stream.uniform();
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), points_.size() - 1);
      std::copy(points_[idx].begin(), points_[idx].end(), out.begin());
      return;
    }
  }
}

std::vector<double> NoiseLaw::sample(RandomStream& stream, std::size_t n) const {
  std::vector<double> out(n * static_cast<std::size_t>(dimension_));
  for (std::size_t i = 0; i < n; ++i)
    draw(stream, std::span<double>(out).subspan(i * dimension_, dimension_));
  return out;
}

Eigen::MatrixXd NoiseLaw::covariance() const {
  const int d = dimension_;
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
  switch (kind_) {
    case Kind::StandardGaussian:
    case Kind::RademacherProduct:
      sigma.setIdentity();
      break;
    case Kind::UniformInterval:
      sigma(0, 0) = params_[1] * params_[1] / 3.0;
      break;
    case Kind::UniformBox:
      for (int j = 0; j < d; ++j) sigma(j, j) = params_[j] * params_[j] / 3.0;
      break;
    case Kind::FiniteDiscrete:
      for (std::size_t i = 0; i < points_.size(); ++i) {
        const Eigen::Map<const Eigen::VectorXd> x(points_[i].data(), d);
        sigma += probs_[i] * x * x.transpose();
      }
      break;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
  const double largest = eig.eigenvalues().maxCoeff();
  if (!(eig.eigenvalues().minCoeff() > 1e-12 * std::max(largest, 1e-300)))
    fail(ErrorKind::InvalidArgument, "noise covariance is not positive definite");
  return sigma;
}

double NoiseLaw::directional_moment(std::span<const double> u, int k) const {
  if (static_cast<int>(u.size()) != dimension_) fail(ErrorKind::InvalidArgument, "direction has wrong dimension");
  if (k < 0) fail(ErrorKind::InvalidArgument, "moment order must be >= 0");
  if (k == 0) return 1.0;

  switch (kind_) {
    case Kind::StandardGaussian: {
      if (k % 2 == 1) return 0.0;
      double norm2 = 0.0;
      for (double x : u) norm2 += x * x;
      double dfact = 1.0;
      for (int j = k - 1; j > 1; j -= 2) dfact *= j;
      return dfact * std::pow(norm2, k / 2);
    }
    case Kind::UniformInterval:
    case Kind::UniformBox:
    case Kind::RademacherProduct: {
      // <u, xi> is a sum of independent symmetric terms; combine their moments.
      std::vector<double> total(k + 1, 0.0);
      total[0] = 1.0;
      for (int j = 0; j < dimension_; ++j) {
        std::vector<double> term(k + 1, 0.0);
        for (int n = 0; n <= k; n += 2) {
          if (kind_ == Kind::RademacherProduct) {
            term[n] = std::pow(u[j], n);
          } else {
            const double h = kind_ == Kind::UniformInterval ? params_[1] : params_[j];
            term[n] = std::pow(u[j] * h, n) / (n + 1);
          }
        }
        total = convolve_moments(total, term);
      }
      return total[k];
    }
    case Kind::FiniteDiscrete: {
      double sum = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i) {
        double dot = 0.0;
        for (int j = 0; j < dimension_; ++j) dot += u[j] * points_[i][j];
        sum += probs_[i] * std::pow(dot, k);
      }
      return sum;
    }
  }
  return 0.0;
}

std::pair<double, double> NoiseLaw::support_1d() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::StandardGaussian:
      return {-inf, inf};
    case Kind::UniformInterval:
      return {params_[0], params_[1]};
    case Kind::UniformBox:
      return {-params_[0], params_[0]};
    case Kind::RademacherProduct:
      return {-1.0, 1.0};
    case Kind::FiniteDiscrete: {
      double lo = inf, hi = -inf;
      for (const auto& x : points_) {
        lo = std::min(lo, x[0]);
        hi = std::max(hi, x[0]);
      }
      return {lo, hi};
    }
  }
  return {-inf, inf};
}

bool NoiseLaw::has_density() const {
  return kind_ == Kind::StandardGaussian || kind_ == Kind::UniformInterval || kind_ == Kind::UniformBox;
}

double NoiseLaw::max_norm() const {
  switch (kind_) {
    case Kind::StandardGaussian:
      return std::numeric_limits<double>::infinity();
    case Kind::UniformInterval:
      return params_[1];
    case Kind::UniformBox: {
      double s = 0.0;
      for (double h : params_) s += h * h;
      return std::sqrt(s);
    }
    case Kind::RademacherProduct:
      return std::sqrt(static_cast<double>(dimension_));
    case Kind::FiniteDiscrete: {
      double best = 0.0;
      for (const auto& x : points_) {
        double s = 0.0;
        for (double v : x) s += v * v;
        best = std::max(best, std::sqrt(s));
      }
      return best;
    }
  }
  return 0.0;
}

double noise_directional_moment(const NoiseLaw& law, std::span<const double> u, int k) {
  return law.directional_moment(u, k);
}

Eigen::MatrixXd noise_covariance(const NoiseLaw& law) { return law.covariance(); }

std::vector<double> sample_noise(const NoiseLaw& law, RandomStream& stream, std::size_t n) {
  return law.sample(stream, n);
}

}  // namespace restartar
