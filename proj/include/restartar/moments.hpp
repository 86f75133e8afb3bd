#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "restartar/limit_law.hpp"

namespace restartar {

/// Moments mu_{k,u} = E <u, Y>^k for k = 0..K.
struct MomentTable {
  std::vector<double> direction;
  std::vector<double> values;
  std::vector<double> stderrs;  // zero for analytic tables
  std::string source;           // "analytic-recursion" or "empirical"
  std::size_t n = 0;
};

struct InequalityVerdict {
  double slack;
  bool pass;
};

/// Limiting moments of <u, Y> from mu_1 = <u, mu>, mu_2 = p u'Sigma u/(2a) and
/// mu_k = (k-1)/(2a) u'Sigma u mu_{k-2}.
MomentTable moment_recursion(const LimitLaw& law, std::span<const double> u, int K);

/// slack = |mu1| - sqrt(2)/sqrt(pi s) mu2; passes when slack <= 0 up to rounding.
InequalityVerdict moment_inequality_check(double mu1, double mu2, double s);

/// Sample moments of <u, x> over row-major samples (n x d) with leave-one-block-out
/// jackknife standard errors.
MomentTable empirical_moments(std::span<const double> samples, std::span<const double> u, int K, int blocks = 100);

}  // namespace restartar
