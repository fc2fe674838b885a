#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gausstail {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G10/K21) with a global error queue.
///
/// Refinement stops once error <= max(abs_tol, rel_tol * |value|). When the
/// interval budget runs out (or every remaining interval is too narrow to
/// split) the result is still accepted if error <= accept_abs; otherwise an
/// AccuracyFailure carrying the partial estimate is thrown. accept_abs < 0
/// means "same as the refinement target".
struct QuadOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  double accept_abs = -1.0;
  int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Integrates f over [breaks.front(), breaks.back()], starting from the
/// panels given by consecutive breakpoints (which must be increasing).
QuadResult integrate(const Integrand& f, std::span<const double> breaks, const QuadOptions& opts = {});

inline QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {}) {
  const double br[2] = {a, b};
  return integrate(f, br, opts);
}

/// Breakpoints lo = b_0 < ... such that consecutive ratios are at most `ratio`
/// between lo and hi. Used to resolve integrands that vary on a log scale
/// near a small positive left end.
std::vector<double> geometric_breaks(double lo, double hi, double ratio = 4.0);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace gausstail
