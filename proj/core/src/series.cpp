#include "gausstail/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gausstail/errors.hpp"

namespace gausstail {

namespace {

constexpr double kDropThreshold = 1e-300;

int saturating_add(int a, int b) {
  if (a >= LogPuiseuxSeries::kExact || b >= LogPuiseuxSeries::kExact) return LogPuiseuxSeries::kExact;
  const long long s = static_cast<long long>(a) + b;
  return s >= LogPuiseuxSeries::kExact ? LogPuiseuxSeries::kExact : static_cast<int>(s);
}

int scale_order(int order, int factor) {
  if (order >= LogPuiseuxSeries::kExact) return LogPuiseuxSeries::kExact;
  const long long s = static_cast<long long>(order) * factor;
  return s >= LogPuiseuxSeries::kExact ? LogPuiseuxSeries::kExact - 1 : static_cast<int>(s);
}

// lowest stored index, or the first unknown index for a zero series
int valuation(const LogPuiseuxSeries& f) {
  if (!f.is_zero()) return f.terms().begin()->first;
  return saturating_add(f.truncation_order(), 1);
}

const LogPolynomial& zero_poly() {
  static const LogPolynomial z;
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// LogPolynomial

LogPolynomial::LogPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

LogPolynomial LogPolynomial::monomial(double c, int power) {
  if (power < 0) throw DomainError("negative monomial power");
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return LogPolynomial(std::move(v));
}

void LogPolynomial::strip() {
  for (double& c : coeffs_) {
    if (std::abs(c) < kDropThreshold) c = 0.0;
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double LogPolynomial::at_log(double log_x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * log_x + *it;
  return acc;
}

LogPolynomial LogPolynomial::operator-() const { return -1.0 * *this; }

LogPolynomial operator+(const LogPolynomial& a, const LogPolynomial& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return LogPolynomial(std::move(out));
}

LogPolynomial operator*(const LogPolynomial& a, const LogPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return LogPolynomial(std::move(out));
}

LogPolynomial operator*(double s, const LogPolynomial& a) {
  std::vector<double> out(a.coeffs_);
  for (double& c : out) c *= s;
  return LogPolynomial(std::move(out));
}

double logpoly_eval(const LogPolynomial& g, double x) {
  if (!(x > 0.0)) throw DomainError("logpoly_eval requires x > 0");
  return g.at_log(std::log(x));
}

const char* to_string(Direction d) noexcept { return d == Direction::AtZero ? "zero" : "infinity"; }

// ---------------------------------------------------------------------------
// LogPuiseuxSeries

LogPuiseuxSeries::LogPuiseuxSeries(Direction direction, int q, int p, int truncation_order)
    : direction_(direction), q_(q), p_(p), truncation_order_(std::min(truncation_order, kExact)) {
  if (q < 1) throw DomainError("ramification q must be positive");
  if (p < -1) throw DomainError("logarithmic power bound must be >= -1");
  if (truncation_order < 0) throw DomainError("truncation order must be >= 0");
}

LogPuiseuxSeries LogPuiseuxSeries::constant(Direction d, double c, int truncation_order) {
  LogPuiseuxSeries s(d, 1, -1, truncation_order);
  s.add_term(0, LogPolynomial::constant(c));
  return s;
}

const LogPolynomial& LogPuiseuxSeries::term(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? zero_poly() : it->second;
}

Rational LogPuiseuxSeries::exponent(int k) const {
  return direction_ == Direction::AtZero ? Rational(k, q_) : Rational(-k, q_);
}

void LogPuiseuxSeries::add_term(int k, const LogPolynomial& poly) {
  if (k < 0) throw DomainError("series index must be nonnegative");
  if (k > truncation_order_ || poly.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, poly);
    return;
  }
  it->second = it->second + poly;
  if (it->second.is_zero()) terms_.erase(it);
}

LogPuiseuxSeries LogPuiseuxSeries::refined(int factor) const {
  if (factor < 1) throw DomainError("refinement factor must be positive");
  LogPuiseuxSeries out(direction_, q_ * factor, p_, scale_order(truncation_order_, factor));
  for (const auto& [k, g] : terms_) out.terms_.emplace(k * factor, g);
  return out;
}

LogPuiseuxSeries LogPuiseuxSeries::normalized() const {
  int g = q_;
  for (const auto& [k, poly] : terms_) g = std::gcd(g, k);
  if (g <= 1) return *this;
  const int order = truncation_order_ >= kExact ? kExact : truncation_order_ / g;
  LogPuiseuxSeries out(direction_, q_ / g, p_, order);
  for (const auto& [k, poly] : terms_) out.terms_.emplace(k / g, poly);
  return out;
}

LogPuiseuxSeries LogPuiseuxSeries::operator-() const { return scaled(-1.0); }

LogPuiseuxSeries LogPuiseuxSeries::scaled(double s) const {
  LogPuiseuxSeries out(direction_, q_, p_, truncation_order_);
  for (const auto& [k, g] : terms_) out.add_term(k, s * g);
  return out;
}

namespace {

void require_same_direction(const LogPuiseuxSeries& f, const LogPuiseuxSeries& g) {
  if (f.direction() != g.direction()) throw UsageError("series directions differ");
}

}  // namespace

LogPuiseuxSeries series_add(const LogPuiseuxSeries& f, const LogPuiseuxSeries& g) {
  require_same_direction(f, g);
  const int q = std::lcm(f.q(), g.q());
  const LogPuiseuxSeries fa = f.refined(q / f.q());
  const LogPuiseuxSeries ga = g.refined(q / g.q());
  LogPuiseuxSeries out(f.direction(), q, std::max(f.p(), g.p()),
                       std::min(fa.truncation_order(), ga.truncation_order()));
  for (const auto& [k, poly] : fa.terms()) out.add_term(k, poly);
  for (const auto& [k, poly] : ga.terms()) out.add_term(k, poly);
  return out.normalized();
}

LogPuiseuxSeries series_mul(const LogPuiseuxSeries& f, const LogPuiseuxSeries& g) {
  require_same_direction(f, g);
  const int q = std::lcm(f.q(), g.q());
  const LogPuiseuxSeries fa = f.refined(q / f.q());
  const LogPuiseuxSeries ga = g.refined(q / g.q());
  const int order = std::min(saturating_add(fa.truncation_order(), valuation(ga)),
                             saturating_add(ga.truncation_order(), valuation(fa)));
  const int p = (f.p() < 0 || g.p() < 0) ? std::max(f.p(), g.p()) : f.p() + g.p();
  LogPuiseuxSeries out(f.direction(), q, p, order);
  for (const auto& [k1, g1] : fa.terms()) {
    for (const auto& [k2, g2] : ga.terms()) {
      if (static_cast<long long>(k1) + k2 > order) break;
      out.add_term(k1 + k2, g1 * g2);
    }
  }
  return out.normalized();
}

namespace {

double sum_terms(const LogPuiseuxSeries& f, double x, int n) {
  if (!(x > 0.0)) throw DomainError("series evaluation requires x > 0");
  const double log_x = std::log(x);
  std::vector<double> values;
  values.reserve(f.terms().size());
  for (const auto& [k, g] : f.terms()) {
    if (k > n) break;
    const double e = f.exponent(k).to_double();
    values.push_back(g.at_log(log_x) * (k == 0 ? 1.0 : std::pow(x, e)));
  }
  std::sort(values.begin(), values.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc;
}

}  // namespace

double partial_sum_eval(const LogPuiseuxSeries& f, double x, int n) {
  if (n > f.truncation_order()) {
    throw InsufficientData("partial sum order " + std::to_string(n) + " exceeds truncation order " +
                           std::to_string(f.truncation_order()));
  }
  return sum_terms(f, x, n);
}

double full_sum_eval(const LogPuiseuxSeries& f, double x) {
  return sum_terms(f, x, std::numeric_limits<int>::max());
}

MembershipReport validate_membership(const LogPuiseuxSeries& f) {
  MembershipReport report;
  bool g0_constant = true;
  int p_eff = -1;
  int g0_degree = -1;
  for (const auto& [k, g] : f.terms()) {
    if (k == 0) {
      g0_degree = g.degree();
      g0_constant = g.degree() <= 0;
    } else {
      p_eff = std::max(p_eff, g.degree());
    }
  }
  report.ok = g0_constant && p_eff <= f.p();
  report.p_effective = g0_constant ? p_eff : std::max(p_eff, g0_degree);
  return report;
}

}  // namespace gausstail
