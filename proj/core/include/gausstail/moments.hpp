#pragma once

#include <vector>

#include "gausstail/quadrature.hpp"
#include "gausstail/rational.hpp"

namespace gausstail {

/// psi^(m)(x) for x > 0 and 0 <= m <= 8, by upward recurrence into the
/// asymptotic (Bernoulli) regime.
double polygamma(int m, double x);

/// j-th derivative of the Gamma function at nu > 0 (j <= 6), as
/// Gamma(nu) * B_j(psi, psi', ..., psi^(j-1)) with B_j the complete Bell polynomial.
double gamma_deriv(int j, double nu);

/// Integral over (0, inf) of exp(-s^2) s^a (log s)^j ds = 2^-(j+1) Gamma^(j)((a+1)/2), a > -1.
double complete_log_moment(double a, int j);

/// Integral over (0, inf) of exp(-s^2) s^a (log(mu s))^j ds, by binomial expansion of the log.
double shifted_log_moment(double a, int j, double mu);

/// Integral over (eps, inf) of exp(-s^2) s^a (log(mu s))^j ds by adaptive quadrature.
/// The Gaussian tail beyond the cutoff and, for eps = 0, the piece next to the
/// origin are bounded analytically and folded into the error estimate.
QuadResult upper_incomplete_log_moment_detailed(double a, int j, double mu, double eps, double tol = 1e-11);

inline double upper_incomplete_log_moment(double a, int j, double mu, double eps) {
  return upper_incomplete_log_moment_detailed(a, j, mu, eps).value;
}

/// Parameters of one Gaussian log-moment  int_lower^inf exp(-s^2) s^a (log(mu s))^j ds.
struct MomentSpec {
  double a = 0.0;
  int j = 0;
  double mu = 1.0;
  double lower = 0.0;
};

/// Dispatches to the closed form when lower = 0, to quadrature otherwise.
double evaluate(const MomentSpec& spec);

/// coeff * eps^exponent * (log eps)^log_power
struct TailTerm {
  Rational exponent;
  int log_power = 0;
  double coeff = 0.0;
};

/// Small-eps form of  int_eps^1 exp(-s^2) s^a (log s)^j ds:
///   constant + sum of TailTerm
/// The constant is the full (convergent) sum of the s = 1 boundary values
/// over all non-resonant orders; the eps-dependent terms stop after the
/// s^(2K) term of the exponential series. A resonant order (a + 2i = -1)
/// contributes a pure (log eps)^(j+1) term.
struct LowerTailExpansion {
  double constant = 0.0;
  std::vector<TailTerm> terms;

  double eval(double eps) const;
};

LowerTailExpansion lower_tail_expansion(const Rational& a, int j, int order);

/// n choose k as a double (exact for the small arguments used here).
double binomial(int n, int k);

}  // namespace gausstail
