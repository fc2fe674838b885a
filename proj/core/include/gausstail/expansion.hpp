#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gausstail/rational.hpp"
#include "gausstail/series.hpp"
#include "gausstail/setmodel.hpp"

namespace gausstail {

/// One contribution C * D to the coefficient of t^(exponent of k) (log t)^p.
///   kind "zero"     C_kp and the complete moment D_kp of the expansion at 0
///   kind "head"     Taylor prefactor and the moment mu_m = int_0^B r^(2m+n-1) Delta
///   kind "tail"     C_kp and the regularized moment from B/sqrt(2t) to infinity
///   kind "shoulder" C_kp times one small-eps term of the incomplete moment
struct ProvenanceEntry {
  std::string kind;
  int k = 0;
  int p = 0;
  double C = 0.0;
  double D = 0.0;
};

struct ExpansionResult {
  int n = 2;
  LogPuiseuxSeries series;
  /// Phi - S_K = O(t^e) with e strictly between the last kept and the next exponent.
  Rational claimed_remainder_exponent;
  /// Size of the first omitted coefficient group when the germ determines it.
  std::optional<double> remainder_constant;
  std::vector<ProvenanceEntry> provenance;
};

/// Expansion of Phi_A(t) as t -> 0 in powers t^(k/(2q)) (log t)^p, k <= K,
/// from the germ of Delta at 0 (q its ramification). The contributions of the
/// profile beyond alpha are exponentially small and not represented.
/// Throws InsufficientData when the germ is truncated below K.
ExpansionResult expand_at_zero(const SetModel& model, int K);

/// Expansion of Phi_A(t) as t -> infinity in powers t^(-k/(2q)) (log t)^p, k <= K.
///
/// Phi is split at B = beta: the part of the radial integral over [0, B] is
/// expanded through the exponential series with numerically integrated
/// moments; the part over [B, inf) is expanded termwise from the germ of Delta
/// at infinity, with the small-eps behaviour of each incomplete moment
/// (eps = B / sqrt(2t)) taken from lower_tail_expansion.
/// Throws InsufficientData when the germ is truncated below K and ModelError
/// when the profile cannot be integrated on [0, B].
ExpansionResult expand_at_infinity(const SetModel& model, int K);

ExpansionResult expand(const SetModel& model, Direction direction, int K);

struct EvalReport {
  Direction direction = Direction::AtZero;
  int N = 0;
  std::vector<double> grid;
  std::vector<double> phi_values;
  std::vector<double> phi_errors;
  std::vector<double> partial_sums;
  /// (Phi - S_N) / t^(exponent of N)
  std::vector<double> remainder_ratios;
  /// Size of a ratio explained by quadrature error and rounding of S_N alone.
  std::vector<double> noise_floor;
  /// Steps where |ratio| grew while above the noise floor.
  int violations = 0;
  /// |last ratio| / |first ratio|
  double decay = 0.0;
  bool pass = false;
};

/// Compares Phi (by quadrature) with the partial sum S_N on a grid running
/// towards the expansion point. Passes when the remainder ratios shrink with
/// at most one exception, ratios inside the noise floor counting as shrinking.
EvalReport verify_remainder(const SetModel& model, const ExpansionResult& result, int N,
                            std::span<const double> grid, double tol = 1e-12);

/// Delta vanishes near 0: zero germ and a zero profile at 16 probes past alpha.
bool is_thin_at_origin(const SetModel& model);

/// The constant term of Delta at 0 is positive, i.e. Phi(0+) > 0.
bool has_full_tangent_cone(const SetModel& model);

}  // namespace gausstail
