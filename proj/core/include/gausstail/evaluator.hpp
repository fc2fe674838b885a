#pragma once

#include <cstdint>
#include <span>

#include "gausstail/setmodel.hpp"

namespace gausstail {

/// Error function. Series for |x| <= 2, continued fraction for erfc beyond,
/// saturating to +-1 for |x| > 6. Odd by construction.
double erf(double x);
/// Complementary error function 1 - erf(x), accurate in the right tail.
double erfc(double x);

/// Probability that a one-dimensional Brownian motion started at a lies in
/// the union of the given disjoint open intervals at time t:
///   1/2 sum_i (erf((d_i - a)/sqrt(2t)) - erf((c_i - a)/sqrt(2t))).
/// Throws UsageError for overlapping or empty intervals.
double phi_univariate(std::span<const Interval> intervals, double a, double t);

/// Limit of phi_univariate(intervals, 0, t) as t -> 0: 1/2 for each side of the
/// origin that is adjacent to an interval.
double univariate_limit_at_zero(std::span<const Interval> intervals);

struct PhiEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// Phi_A(t) = pi^(-n/2) int_0^inf exp(-s^2) s^(n-1) Delta(s sqrt(2t)) ds.
///
/// Panels are split at the profile seams (scaled by 1/sqrt(2t)) and
/// geometrically towards the smallest seam; the Gaussian tail beyond the
/// cutoff is bounded analytically and added to the error. Refinement aims at
/// max(tol/100, 1e-13 |value|); an error above tol raises AccuracyFailure.
/// One-dimensional models use phi_univariate.
PhiEstimate phi_quadrature(const SetModel& model, double t, double tol = 1e-12);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Fraction of sqrt(t) Z, Z standard normal in R^n, falling in the set.
///
/// Sample i uses normals derived from a counter-based hash of (seed, i), so
/// the estimate does not depend on the number of threads. Requires at least
/// 10^4 samples and a membership predicate (or intervals when n = 1).
McEstimate phi_montecarlo(const SetModel& model, double t, std::int64_t samples, std::uint64_t seed);

/// Standard normal pair for (seed, index, pair) by Box-Muller over hashed uniforms.
void gaussian_pair(std::uint64_t seed, std::uint64_t index, std::uint64_t pair, double& z0, double& z1);

}  // namespace gausstail
