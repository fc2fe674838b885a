#include "gausstail/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gausstail/errors.hpp"
#include "gausstail/parallel.hpp"
#include "gausstail/quadrature.hpp"

namespace gausstail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// 2x/sqrt(pi) exp(-x^2) sum (2x^2)^k / (1 * 3 * ... * (2k+1)); all terms positive
double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= 2.0 * x2 / (2 * k + 1);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return kTwoOverSqrtPi * x * std::exp(-x2) * sum;
}

// erfc for x >= 2: exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz
double erfc_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform_open(std::uint64_t bits) { return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53; }

// erf(x2) - erf(x1) without cancellation in the tails
double erf_diff(double x1, double x2) {
  if (x1 >= 0.0) return erfc(x1) - erfc(x2);
  if (x2 <= 0.0) return erfc(-x2) - erfc(-x1);
  return erf(x2) - erf(x1);
}

std::vector<Interval> sorted_checked(std::span<const Interval> intervals) {
  std::vector<Interval> iv(intervals.begin(), intervals.end());
  std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (!(iv[i].lo < iv[i].hi)) throw UsageError("empty or reversed interval");
    if (i > 0 && iv[i].lo < iv[i - 1].hi) throw UsageError("overlapping intervals");
  }
  return iv;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double v;
  if (ax <= 2.0) {
    v = erf_series(ax);
  } else if (ax <= 6.0) {
    v = 1.0 - erfc_fraction(ax);
  } else {
    v = 1.0;
  }
  return x < 0.0 ? -v : v;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x > 27.5) return 0.0;
  if (x >= 2.0) return erfc_fraction(x);
  if (x >= -2.0) return 1.0 - erf(x);
  return 2.0 - erfc(-x);
}

double phi_univariate(std::span<const Interval> intervals, double a, double t) {
  if (!(t > 0.0)) throw DomainError("time must be positive");
  const std::vector<Interval> iv = sorted_checked(intervals);
  const double scale = 1.0 / std::sqrt(2.0 * t);
  double sum = 0.0;
  for (const Interval& i : iv) sum += 0.5 * erf_diff((i.lo - a) * scale, (i.hi - a) * scale);
  return std::clamp(sum, 0.0, 1.0);
}

double univariate_limit_at_zero(std::span<const Interval> intervals) {
  const std::vector<Interval> iv = sorted_checked(intervals);
  bool right = false;
  bool left = false;
  for (const Interval& i : iv) {
    right = right || (i.lo <= 0.0 && i.hi > 0.0);
    left = left || (i.lo < 0.0 && i.hi >= 0.0);
  }
  return 0.5 * (right ? 1.0 : 0.0) + 0.5 * (left ? 1.0 : 0.0);
}

PhiEstimate phi_quadrature(const SetModel& model, double t, double tol) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (model.n == 1) return {phi_univariate(model.intervals, 0.0, t), 1e-15};

  const int n = model.n;
  const double root = std::sqrt(2.0 * t);
  const double norm = std::pow(kPi, -0.5 * n);
  const double cutoff = std::max(10.0, std::sqrt(static_cast<double>(n)) + 8.0);

  std::vector<double> seams;
  for (double r : model_seams(model)) {
    const double s = r / root;
    if (s < cutoff) seams.push_back(s);
  }
  std::vector<double> breaks{0.0};
  if (!seams.empty()) {
    for (double b : geometric_breaks(seams.front(), std::min(1.0, cutoff))) breaks.push_back(b);
  }
  breaks.insert(breaks.end(), seams.begin(), seams.end());
  breaks.push_back(cutoff);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto f = [&](double s) {
    if (s <= 0.0) return 0.0;
    return norm * std::exp(-s * s) * std::pow(s, n - 1) * delta_eval(model, s * root);
  };
  QuadOptions opts;
  opts.abs_tol = 0.01 * tol;
  opts.rel_tol = 1e-13;
  opts.accept_abs = tol;
  opts.max_intervals = 20000;
  const QuadResult q = integrate(f, breaks, opts);

  // beyond the cutoff Delta <= sphere measure and int_c^inf e^-s^2 s^m <= e^-c^2 c^(m-1) / (2 - (m-1)/c^2)
  const int m = n - 1;
  const double tail = norm * sphere_measure(n) * std::exp(-cutoff * cutoff) * std::pow(cutoff, m - 1) /
                      (2.0 - (m - 1) / (cutoff * cutoff));
  const PhiEstimate out{q.value, q.error + tail};
  if (out.error > tol) throw AccuracyFailure("quadrature of Phi did not reach the tolerance", out.value, out.error);
  return out;
}

void gaussian_pair(std::uint64_t seed, std::uint64_t index, std::uint64_t pair, double& z0, double& z1) {
  const std::uint64_t base = splitmix(seed ^ splitmix(index)) ^ (pair * 0xD1B54A32D192ED03ULL);
  const double u1 = uniform_open(splitmix(base));
  const double u2 = uniform_open(splitmix(base ^ 0xA0761D6478BD642FULL));
  const double rad = std::sqrt(-2.0 * std::log(u1));
  z0 = rad * std::cos(2.0 * kPi * u2);
  z1 = rad * std::sin(2.0 * kPi * u2);
}

McEstimate phi_montecarlo(const SetModel& model, double t, std::int64_t samples, std::uint64_t seed) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
  if (samples < 10000) throw UsageError("Monte Carlo needs at least 10^4 samples");
  if (model.n >= 2 && !model.membership) throw Unsupported("model has no membership predicate");
  if (model.n == 1 && model.intervals.empty()) throw Unsupported("model has no intervals");

  constexpr std::int64_t kBlock = 1 << 15;
  const std::int64_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(blocks), 0);
  const double scale = std::sqrt(t);
  const int n = model.n;
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    std::vector<double> x(static_cast<std::size_t>(n));
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t end = std::min(samples, begin + kBlock);
    std::int64_t count = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      for (int c = 0; c < n; c += 2) {
        double z0 = 0.0;
        double z1 = 0.0;
        gaussian_pair(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(c / 2), z0, z1);
        x[c] = scale * z0;
        if (c + 1 < n) x[c + 1] = scale * z1;
      }
      if (membership(model, x)) ++count;
    }
    hits[b] = count;
  });
  std::int64_t total = 0;
  for (std::int64_t h : hits) total += h;
  McEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(total) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

}  // namespace gausstail
