#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "gausstail/rational.hpp"

namespace gausstail {

/// Polynomial g(T) = d_0 + d_1 T + ... + d_p T^p standing for g(log x).
///
/// Trailing zero coefficients are stripped, so degree() is the index of the
/// last nonzero coefficient and the empty list is the zero polynomial.
class LogPolynomial {
 public:
  LogPolynomial() = default;
  explicit LogPolynomial(std::vector<double> coeffs);
  LogPolynomial(std::initializer_list<double> coeffs) : LogPolynomial(std::vector<double>(coeffs)) {}

  static LogPolynomial constant(double c) { return LogPolynomial({c}); }
  /// c * T^power
  static LogPolynomial monomial(double c, int power);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(int j) const noexcept {
    return j >= 0 && j < static_cast<int>(coeffs_.size()) ? coeffs_[j] : 0.0;
  }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Evaluate at T directly (T = log x).
  double at_log(double log_x) const noexcept;

  LogPolynomial operator-() const;
  friend LogPolynomial operator+(const LogPolynomial& a, const LogPolynomial& b);
  friend LogPolynomial operator*(const LogPolynomial& a, const LogPolynomial& b);
  friend LogPolynomial operator*(double s, const LogPolynomial& a);
  friend bool operator==(const LogPolynomial& a, const LogPolynomial& b) = default;

 private:
  void strip();
  std::vector<double> coeffs_;
};

/// Sum of d_j (ln x)^j. Throws DomainError for x <= 0.
double logpoly_eval(const LogPolynomial& g, double x);

enum class Direction { AtZero, AtInfinity };

const char* to_string(Direction d) noexcept;

/// Truncated log-Puiseux series  sum_k g_k(log x) x^(+-k/q).
///
/// AtZero uses exponents +k/q, AtInfinity uses -k/q. Terms with k greater than
/// truncation_order are unknown (not zero). A truncation order of kExact marks
/// a finite series whose omitted terms are all zero.
class LogPuiseuxSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  LogPuiseuxSeries() = default;
  LogPuiseuxSeries(Direction direction, int q, int p, int truncation_order);

  static LogPuiseuxSeries zero(Direction d, int truncation_order = kExact) {
    return LogPuiseuxSeries(d, 1, -1, truncation_order);
  }
  static LogPuiseuxSeries constant(Direction d, double c, int truncation_order = kExact);

  Direction direction() const noexcept { return direction_; }
  int q() const noexcept { return q_; }
  int p() const noexcept { return p_; }
  int truncation_order() const noexcept { return truncation_order_; }
  bool is_exact() const noexcept { return truncation_order_ >= kExact; }
  const std::map<int, LogPolynomial>& terms() const noexcept { return terms_; }

  /// g_k, or the zero polynomial when k is not stored.
  const LogPolynomial& term(int k) const;
  /// Exponent of x in term k as an exact fraction (sign follows the direction).
  Rational exponent(int k) const;
  /// True when every stored g_k is zero.
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds poly to g_k (terms beyond the truncation order are ignored).
  void add_term(int k, const LogPolynomial& poly);
  void set_p(int p) noexcept { p_ = p; }

  /// Same series with ramification q * factor.
  LogPuiseuxSeries refined(int factor) const;
  /// Smallest q representing the same stored terms; the truncation order is
  /// rounded down when it is not representable.
  LogPuiseuxSeries normalized() const;

  LogPuiseuxSeries operator-() const;
  LogPuiseuxSeries scaled(double s) const;

  friend bool operator==(const LogPuiseuxSeries& a, const LogPuiseuxSeries& b) = default;

 private:
  Direction direction_ = Direction::AtZero;
  int q_ = 1;
  int p_ = -1;
  int truncation_order_ = kExact;
  std::map<int, LogPolynomial> terms_;
};

LogPuiseuxSeries series_add(const LogPuiseuxSeries& f, const LogPuiseuxSeries& g);
LogPuiseuxSeries series_mul(const LogPuiseuxSeries& f, const LogPuiseuxSeries& g);

/// S_N(x) = sum over k <= N of g_k(log x) x^(+-k/q), summed smallest magnitude first.
double partial_sum_eval(const LogPuiseuxSeries& f, double x, int n);
/// Partial sum over every stored term (requires an exact series or uses all stored terms).
double full_sum_eval(const LogPuiseuxSeries& f, double x);

struct MembershipReport {
  bool ok = false;
  int p_effective = -1;
};

/// Checks "g_0 constant" and deg(g_k) <= p; reports the smallest admissible p.
MembershipReport validate_membership(const LogPuiseuxSeries& f);

}  // namespace gausstail
