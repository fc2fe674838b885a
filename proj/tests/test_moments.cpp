#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gausstail/errors.hpp"
#include "gausstail/moments.hpp"
#include "mp_oracle.hpp"

using namespace gausstail;

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_SUITE("moments") {

TEST_CASE("gamma_deriv examples") {
  CHECK(gamma_deriv(0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_deriv(0, 5.0) == doctest::Approx(24.0).epsilon(1e-14));
  const double fd = oracle::gamma_deriv_fd(1, 2.0);
  CHECK(rel(gamma_deriv(1, 2.0), fd) < 1e-9);
  CHECK(gamma_deriv(1, 2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-13));
  CHECK(gamma_deriv(1, 2.0) == doctest::Approx(0.42278434).epsilon(1e-8));
  CHECK_THROWS_AS(gamma_deriv(0, 0.0), DomainError);
  CHECK_THROWS_AS(gamma_deriv(0, -1.5), DomainError);
  CHECK_THROWS_AS(gamma_deriv(7, 1.0), Unsupported);
}

TEST_CASE("gamma_deriv matches high-precision finite differences") {
  for (int j = 0; j <= 3; ++j) {
    for (double nu = 0.5; nu <= 5.0001; nu += 0.25) {
      CAPTURE(j);
      CAPTURE(nu);
      CHECK(rel(gamma_deriv(j, nu), oracle::gamma_deriv_fd(j, nu)) <= 1e-6);
    }
  }
  // higher orders against the same oracle with a coarser step
  for (int j = 4; j <= 6; ++j) {
    for (double nu : {0.7, 1.5, 3.0}) {
      CAPTURE(j);
      CHECK(rel(gamma_deriv(j, nu), oracle::gamma_deriv_fd(j, nu, 1e-4)) <= 1e-5);
    }
  }
}

TEST_CASE("polygamma at 1") {
  CHECK(polygamma(0, 1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(polygamma(1, 1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
}

TEST_CASE("complete_log_moment examples") {
  CHECK(complete_log_moment(1.0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(complete_log_moment(3.0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  const double q31 = oracle::log_moment(3.0, 1, 1.0, 0.0, kInf);
  CHECK(rel(complete_log_moment(3.0, 1), q31) < 1e-12);
  CHECK(complete_log_moment(3.0, 1) == doctest::Approx(0.10569608).epsilon(1e-8));
  CHECK_THROWS_AS(complete_log_moment(-1.0, 0), DivergentMoment);
  CHECK_THROWS_AS(complete_log_moment(-2.5, 1), DivergentMoment);
}

TEST_CASE("complete_log_moment against quadrature on a grid") {
  for (double a : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.5, 7.0}) {
    for (int j = 0; j <= 4; ++j) {
      CAPTURE(a);
      CAPTURE(j);
      const double ref = oracle::log_moment(a, j, 1.0, 0.0, kInf);
      CHECK(std::abs(complete_log_moment(a, j) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("shifted_log_moment examples") {
  const double s2 = std::numbers::sqrt2;
  CHECK(shifted_log_moment(2.0, 1, 1.0) == complete_log_moment(2.0, 1));
  CHECK(rel(shifted_log_moment(3.0, 1, s2), oracle::log_moment(3.0, 1, s2, 0.0, kInf)) < 1e-12);
  CHECK(shifted_log_moment(3.0, 1, s2) == doctest::Approx(0.27898288).epsilon(1e-8));
  CHECK(rel(shifted_log_moment(2.0, 0, s2), 0.5 * std::tgamma(1.5)) < 1e-14);
  CHECK(shifted_log_moment(2.0, 0, s2) == doctest::Approx(0.44311346).epsilon(1e-8));
  CHECK(rel(shifted_log_moment(0.5, 3, 2.7), oracle::log_moment(0.5, 3, 2.7, 0.0, kInf)) < 1e-11);
}

TEST_CASE("upper_incomplete_log_moment examples") {
  CHECK(upper_incomplete_log_moment(1.0, 0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  // int_1^inf e^-s^2 / s ds = E1(1) / 2
  const double e1_half = oracle::log_moment(-1.0, 0, 1.0, 1.0, kInf);
  CHECK(rel(upper_incomplete_log_moment(-1.0, 0, 1.0, 1.0), e1_half) < 1e-11);
  CHECK(upper_incomplete_log_moment(-1.0, 0, 1.0, 1.0) == doctest::Approx(0.10969196719776).epsilon(1e-11));
  const double erfc2 = 1.0 - oracle::erf_series(2.0);
  CHECK(rel(upper_incomplete_log_moment(0.0, 0, 1.0, 2.0), 0.5 * std::sqrt(std::numbers::pi) * erfc2) < 1e-10);
  CHECK_THROWS_AS(upper_incomplete_log_moment(-1.0, 0, 1.0, 0.0), DivergentMoment);
  CHECK_THROWS_AS(upper_incomplete_log_moment(-3.0, 2, 1.0, 0.0), DivergentMoment);
}

TEST_CASE("split identity: complete = upper + lower") {
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    for (int j = 0; j <= 2; ++j) {
      for (double eps : {0.05, 0.3, 1.0, 1.7, 2.9}) {
        CAPTURE(a);
        CAPTURE(j);
        CAPTURE(eps);
        const double lower = oracle::log_moment(a, j, 1.0, 0.0, eps);
        const double upper = upper_incomplete_log_moment(a, j, 1.0, eps);
        const double complete = complete_log_moment(a, j);
        CHECK(std::abs(upper + lower - complete) <= 1e-10 * std::abs(complete));
      }
    }
  }
}

TEST_CASE("derivative of the upper incomplete moment") {
  for (double a : {-1.5, -0.5, 0.0, 2.0}) {
    for (int j = 0; j <= 2; ++j) {
      for (double mu : {1.0, std::numbers::sqrt2}) {
        for (double eps : {0.4, 1.1, 2.0}) {
          const double h = 1e-4 * eps;
          const double d = (upper_incomplete_log_moment(a, j, mu, eps + h) -
                            upper_incomplete_log_moment(a, j, mu, eps - h)) / (2 * h);
          const double expected = -std::exp(-eps * eps) * std::pow(eps, a) * std::pow(std::log(mu * eps), j);
          CAPTURE(a);
          CAPTURE(j);
          CAPTURE(eps);
          if (std::abs(expected) < 1e-6) {
            CHECK(std::abs(d - expected) <= 1e-6);
          } else {
            CHECK(rel(d, expected) <= 1e-6);
          }
        }
      }
    }
  }
}

TEST_CASE("upper incomplete moments against quadrature, divergent-at-zero cases") {
  for (double a : {-3.0, -2.0, -1.5, -1.0}) {
    for (int j = 0; j <= 2; ++j) {
      for (double eps : {0.1, 1.0, 2.5}) {
        const double ref = oracle::log_moment(a, j, std::numbers::sqrt2, eps, kInf);
        CAPTURE(a);
        CAPTURE(j);
        CAPTURE(eps);
        CHECK(std::abs(upper_incomplete_log_moment(a, j, std::numbers::sqrt2, eps) - ref) <=
              1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("lower_tail_expansion examples") {
  const LowerTailExpansion r = lower_tail_expansion(Rational(-1), 0, 3);
  // coefficient of log(1/eps) is 1, i.e. log eps carries -1
  double log_coeff = 0.0;
  double eps2 = 0.0;
  for (const TailTerm& t : r.terms) {
    if (t.exponent == Rational(0) && t.log_power == 1) log_coeff += t.coeff;
    if (t.exponent == Rational(2) && t.log_power == 0) eps2 += t.coeff;
  }
  CHECK(log_coeff == -1.0);
  CHECK(eps2 == doctest::Approx(0.5).epsilon(1e-15));

  const LowerTailExpansion r1 = lower_tail_expansion(Rational(1), 0, 5);
  CHECK(r1.constant == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-14));
  CHECK(r1.constant == doctest::Approx(0.31606028).epsilon(1e-8));
  for (const TailTerm& t : r1.terms) CHECK(t.log_power == 0);
}

TEST_CASE("lower tail partial sums converge to the quadrature value") {
  struct Case {
    Rational a;
    int j;
  };
  for (const Case c : {Case{Rational(-1), 0}, Case{Rational(-1), 1}, Case{Rational(-1, 2), 2},
                       Case{Rational(-3), 1}, Case{Rational(1, 3), 0}, Case{Rational(2), 2}}) {
    double previous_error_eps = 1.0;
    for (double eps : {0.3, 0.1, 0.03}) {
      const double ref = oracle::log_moment(c.a.to_double(), c.j, 1.0, eps, 1.0);
      double previous_error_order = 1.0;
      for (int K : {1, 2, 4, 8}) {
        const double err = std::abs(lower_tail_expansion(c.a, c.j, K).eval(eps) - ref);
        // first omitted term: eps^(a + 2K + 3) |log eps|^j / (K+1)!
        const double omitted = std::pow(eps, c.a.to_double() + 2 * K + 3) *
                               std::pow(std::abs(std::log(eps)), c.j) / std::tgamma(K + 2.0);
        // rounding floor relative to the size of the integral
        const double floor = 1e-13 + 1e-15 * std::abs(ref);
        CAPTURE(c.a.to_string());
        CAPTURE(c.j);
        CAPTURE(eps);
        CAPTURE(K);
        CHECK(err <= 4.0 * omitted + floor);
        CHECK(err <= previous_error_order + floor);
        previous_error_order = err;
      }
      const double err1 = std::abs(lower_tail_expansion(c.a, c.j, 1).eval(eps) - ref);
      CHECK(err1 <= previous_error_eps + 1e-13);
      previous_error_eps = err1;
    }
  }
}

TEST_CASE("positivity of complete moments") {
  for (double a = -0.99; a < 12.0; a += 0.37) CHECK(complete_log_moment(a, 0) > 0.0);
}

TEST_CASE("evaluate dispatch") {
  CHECK(evaluate(MomentSpec{1.0, 0, 1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(evaluate(MomentSpec{-1.0, 0, 1.0, 1.0}) == doctest::Approx(0.10969196719776).epsilon(1e-10));
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(4, 0) == 1.0);
  CHECK(binomial(3, 4) == 0.0);
}

}
