#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gausstail/expr.hpp"
#include "gausstail/series.hpp"

namespace gausstail {

/// Closed interval [from, to] of radii on which `expr` (a function of r) gives the profile.
struct MidPiece {
  double from = 0.0;
  double to = 0.0;
  Expr expr;
};

/// Open interval (lo, hi) of the real line; endpoints may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A set A in R^n described by its radial profile
///   Delta(r) = angular measure of the slice of A at radius r.
///
/// For n >= 2 the profile is split into three parts: a series germ on (0, alpha],
/// closed-form pieces on [alpha, beta] and a series germ on [beta, inf).
/// For n = 1 the set is a finite union of disjoint open intervals instead.
/// The optional membership predicate is an expression in the polar variables
/// (r, phi, theta1, ..., theta_{n-2}).
struct SetModel {
  int n = 2;
  std::string label;
  double alpha = 1.0;
  double beta = 1.0;
  LogPuiseuxSeries delta_zero = LogPuiseuxSeries::zero(Direction::AtZero);
  LogPuiseuxSeries delta_infinity = LogPuiseuxSeries::zero(Direction::AtInfinity);
  std::vector<MidPiece> delta_mid;
  std::optional<Expr> membership;
  std::vector<Interval> intervals;
};

/// Surface measure of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2).
double sphere_measure(int n);

/// Polar Jacobian factor prod_j cos(theta_j)^j; theta has n - 2 entries in (-pi/2, pi/2).
double angular_weight(int n, std::span<const double> theta);

/// Polar coordinates of a point: {r, phi, theta_1, ..., theta_{n-2}} with
///   x1 = r cos(phi) prod cos(theta_j),  x2 = r sin(phi) prod cos(theta_j),
///   x_{j+2} = r sin(theta_j) prod_{i>j} cos(theta_i).
std::vector<double> to_polar(std::span<const double> x);
/// Inverse of to_polar.
std::vector<double> from_polar(std::span<const double> polar);

/// Delta(r); at r = alpha and r = beta the series branch is used.
double delta_eval(const SetModel& model, double r);

/// Point membership. Throws Unsupported when the model has no predicate.
bool membership(const SetModel& model, std::span<const double> point);

/// Radii where the profile may be non-smooth: alpha, beta and the mid piece ends.
std::vector<double> model_seams(const SetModel& model);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Checks directions, log powers (p <= n - 2), coverage of [alpha, beta] by the
/// mid pieces, seam agreement within 1e-8 (1 + value), and
/// 0 <= Delta <= sphere_measure(n) on a log-spaced probe grid.
ValidationReport validate(const SetModel& model);
/// Throws ModelError listing the problems when validate() fails.
void require_valid(const SetModel& model);

/// Profile of the dilated set lambda * A, i.e. Delta(r / lambda).
SetModel dilate(const SetModel& model, double lambda);

/// Radial function for sector bounds: an expression in r plus its series
/// germs at 0 and at infinity where the band reaches those ends. Constant
/// functions need no germs.
struct RadialFunction {
  Expr expr;
  std::optional<LogPuiseuxSeries> germ_zero;
  std::optional<LogPuiseuxSeries> germ_infinity;

  RadialFunction(double c) : expr(Expr::constant(c)) {}  // NOLINT(google-explicit-constructor)
  RadialFunction(Expr e, std::optional<LogPuiseuxSeries> at_zero = std::nullopt,  // NOLINT
                 std::optional<LogPuiseuxSeries> at_infinity = std::nullopt)
      : expr(std::move(e)), germ_zero(std::move(at_zero)), germ_infinity(std::move(at_infinity)) {}
};

/// Planar sector band {r_lo < r < r_hi, phi_lo(r) < phi < phi_hi(r)}.
struct SectorBand {
  double r_lo = 0.0;
  double r_hi = 0.0;
  RadialFunction phi_lo;
  RadialFunction phi_hi;
};

/// Model of a disjoint union of planar sector bands. Delta(r) is the sum of
/// phi_hi(r) - phi_lo(r) over the bands containing r. alpha is half the
/// smallest positive band endpoint and beta twice the largest finite one.
/// Throws ModelError when a band leaves [-pi, pi] or its bounds cross.
SetModel sector2d(std::span<const SectorBand> bands, std::string label = "sector2d");

/// Builtin sets by shorthand "name" or "name:key=val,...":
///   full:n=N          all of R^n
///   ball:n=N,R=X      centered ball of radius X
///   halfspace:n=N     {x_n > 0}
///   cone:n=N,angle=G  circular cone of half-angle G around the x_n axis
///   ex34, ex38, ex39  the planar and spatial example sets with logarithmic
///                     and divergent expansions
/// Throws UsageError on unknown names or keys.
SetModel builtin(std::string_view spec);
std::vector<std::string> builtin_names();

}  // namespace gausstail
