#include "gausstail/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gausstail/errors.hpp"

namespace gausstail {

namespace {

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,       -1.0 / 30.0,   1.0 / 42.0,          -1.0 / 30.0,         5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0,     43867.0 / 798.0,     -174611.0 / 330.0};

constexpr double kAsymptoticThreshold = 20.0;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double polygamma_asymptotic(int m, double x) {
  if (m == 0) {
    double acc = std::log(x) - 0.5 / x;
    const double inv2 = 1.0 / (x * x);
    double pw = inv2;
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
      acc -= kBernoulliEven[k - 1] / (2.0 * k) * pw;
      pw *= inv2;
    }
    return acc;
  }
  const double inv = 1.0 / x;
  double acc = factorial(m - 1) * std::pow(inv, m) + 0.5 * factorial(m) * std::pow(inv, m + 1);
  double pw = std::pow(inv, m + 2);
  for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
    // (2k+m-1)! / (2k)!
    double ratio = 1.0;
    for (int i = 2 * static_cast<int>(k) + 1; i <= 2 * static_cast<int>(k) + m - 1; ++i) ratio *= i;
    acc += kBernoulliEven[k - 1] * ratio * pw;
    pw *= inv * inv;
  }
  return (m % 2 == 1) ? acc : -acc;
}

// integral over (0, h) of s^a |log s|^i ds for h < 1 and a > -1:
// Gamma(i+1, (a+1) L) / (a+1)^(i+1) with L = -log h.
double small_s_power_log_integral(double a, int i, double h) {
  const double c = a + 1.0;
  const double x = -c * std::log(h);
  double partial = 0.0;
  double term = 1.0;
  for (int k = 0; k <= i; ++k) {
    if (k > 0) term *= x / k;
    partial += term;
  }
  return factorial(i) * std::exp(-x) * partial / std::pow(c, i + 1);
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double polygamma(int m, double x) {
  if (!(x > 0.0)) throw DomainError("polygamma requires x > 0");
  if (m < 0 || m > 8) throw Unsupported("polygamma order must be in [0, 8]");
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double mf = factorial(m);
  // psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! / x^(m+1)
  double shift_sum = 0.0;
  while (x < kAsymptoticThreshold) {
    shift_sum -= sign * mf / std::pow(x, m + 1);
    x += 1.0;
  }
  return polygamma_asymptotic(m, x) + shift_sum;
}

double gamma_deriv(int j, double nu) {
  if (!(nu > 0.0)) throw DomainError("gamma_deriv requires nu > 0");
  if (j < 0) throw DomainError("gamma_deriv order must be nonnegative");
  if (j > 6) throw Unsupported("gamma_deriv supports orders up to 6");
  std::array<double, 7> psi{};
  for (int i = 0; i < j; ++i) psi[i] = polygamma(i, nu);
  // complete Bell polynomials: B_{n+1} = sum_i C(n,i) B_{n-i} psi^(i)
  std::array<double, 8> bell{};
  bell[0] = 1.0;
  for (int n = 0; n < j; ++n) {
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) acc += binomial(n, i) * bell[n - i] * psi[i];
    bell[n + 1] = acc;
  }
  return std::tgamma(nu) * bell[j];
}

double complete_log_moment(double a, int j) {
  if (!(a > -1.0)) throw DivergentMoment("complete log-moment diverges for a <= -1");
  return std::ldexp(gamma_deriv(j, 0.5 * (a + 1.0)), -(j + 1));
}

double shifted_log_moment(double a, int j, double mu) {
  if (!(mu > 0.0)) throw DomainError("log shift mu must be positive");
  if (mu == 1.0) return complete_log_moment(a, j);
  const double lm = std::log(mu);
  double acc = 0.0;
  for (int i = 0; i <= j; ++i) acc += binomial(j, i) * std::pow(lm, i) * complete_log_moment(a, j - i);
  return acc;
}

QuadResult upper_incomplete_log_moment_detailed(double a, int j, double mu, double eps, double tol) {
  if (!(mu > 0.0)) throw DomainError("log shift mu must be positive");
  if (!(eps >= 0.0)) throw DomainError("lower limit must be nonnegative");
  if (j < 0) throw DomainError("log power must be nonnegative");
  if (eps == 0.0 && !(a > -1.0)) throw DivergentMoment("incomplete moment from 0 diverges for a <= -1");

  const double log_mu = std::log(mu);
  auto integrand = [=](double s) {
    const double v = std::exp(-s * s) * std::pow(s, a);
    return j == 0 ? v : v * std::pow(std::log(mu * s), j);
  };

  const double b = a + j;
  double cutoff = std::max({8.0, std::sqrt(std::log(1.0 / tol)) + a, std::sqrt(std::max(b, 0.0)) + 8.0});
  if (eps >= cutoff) cutoff = eps + 8.0;

  // tail beyond the cutoff: |log(mu s)|^j <= (|log mu| + 1)^j s^j for s >= 1
  const double denom = std::max(0.5, 2.0 - std::max(0.0, b - 1.0) / (cutoff * cutoff));
  const double tail_bound =
      std::pow(std::abs(log_mu) + 1.0, j) * std::exp(-cutoff * cutoff) * std::pow(cutoff, b - 1.0) / denom;

  double lo = eps;
  double head_bound = 0.0;
  if (eps == 0.0) {
    // walk toward the origin until the analytic bound of the remaining piece is negligible
    double h = 1.0;
    for (int step = 0; step < 1100; ++step) {
      double bound = 0.0;
      for (int i = 0; i <= j; ++i) {
        bound += binomial(j, i) * std::pow(std::abs(log_mu), j - i) * small_s_power_log_integral(a, i, h);
      }
      head_bound = bound;
      if (bound < 1e-3 * tol || h < 1e-300) break;
      h *= 0.5;
    }
    lo = h;
  }

  const std::vector<double> breaks = geometric_breaks(lo, cutoff, 2.0);
  QuadOptions opts;
  opts.abs_tol = 1e-2 * tol;
  opts.rel_tol = 1e-13;
  opts.accept_abs = tol;
  QuadResult r = integrate(integrand, breaks, opts);
  r.error += tail_bound + head_bound;
  return r;
}

double evaluate(const MomentSpec& spec) {
  if (spec.lower == 0.0) return shifted_log_moment(spec.a, spec.j, spec.mu);
  return upper_incomplete_log_moment(spec.a, spec.j, spec.mu, spec.lower);
}

double LowerTailExpansion::eval(double eps) const {
  if (!(eps > 0.0)) throw DomainError("lower tail expansion needs eps > 0");
  const double le = std::log(eps);
  CompensatedSum acc;
  acc.add(constant);
  for (const TailTerm& t : terms) {
    acc.add(t.coeff * std::pow(eps, t.exponent.to_double()) * std::pow(le, t.log_power));
  }
  return acc.value();
}

LowerTailExpansion lower_tail_expansion(const Rational& a, int j, int order) {
  if (j < 0) throw DomainError("log power must be nonnegative");
  if (order < 0) throw DomainError("expansion order must be nonnegative");
  LowerTailExpansion out;
  const double jf = factorial(j);
  const double jsign = (j % 2 == 0) ? 1.0 : -1.0;

  // constant: sum over non-resonant i of (-1)^i/i! * (-1)^j j!/(b+1)^(j+1), b = a + 2i
  CompensatedSum constant;
  double inv_fact = 1.0;
  double largest = 0.0;
  for (int i = 0; i < 400; ++i) {
    if (i > 0) inv_fact /= i;
    const Rational bp1 = a + Rational(2 * i + 1);
    if (bp1.is_zero()) continue;
    const double term = ((i % 2 == 0) ? 1.0 : -1.0) * inv_fact * jsign * jf / std::pow(bp1.to_double(), j + 1);
    constant.add(term);
    largest = std::max(largest, std::abs(term));
    if (bp1.to_double() > 0.0 && std::abs(term) < 1e-20 * largest && i > 4) break;
  }
  out.constant = constant.value();

  // eps-dependent pieces: minus the antiderivative at eps
  inv_fact = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) inv_fact /= i;
    const double weight = ((i % 2 == 0) ? 1.0 : -1.0) * inv_fact;
    const Rational bp1 = a + Rational(2 * i + 1);
    if (bp1.is_zero()) {
      // int_eps^1 (log s)^j / s ds = -(log eps)^(j+1)/(j+1)
      out.terms.push_back({Rational(0), j + 1, -weight / (j + 1)});
      continue;
    }
    const double c = bp1.to_double();
    // antiderivative of s^b (log s)^j: s^(b+1) sum_u (-1)^(j-u) j!/u! (log s)^u / (b+1)^(j-u+1)
    double u_fact = 1.0;
    for (int u = 0; u <= j; ++u) {
      if (u > 0) u_fact *= u;
      const double sign = ((j - u) % 2 == 0) ? 1.0 : -1.0;
      const double coeff = sign * jf / u_fact / std::pow(c, j - u + 1);
      out.terms.push_back({bp1, u, -weight * coeff});
    }
  }
  return out;
}

}  // namespace gausstail
