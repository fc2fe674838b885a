#include "gausstail/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "gausstail/errors.hpp"
#include "gausstail/evaluator.hpp"
#include "gausstail/moments.hpp"
#include "gausstail/quadrature.hpp"

namespace gausstail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// 2^x for a rational x, converted once
double pow2(const Rational& x) { return std::exp2(x.to_double()); }

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Coefficients keyed by (k, log power), summed in a fixed order.
class Accumulator {
 public:
  void add(int k, int p, double c, double d, const char* kind) {
    sums_[{k, p}].add(c * d);
    provenance_.push_back({kind, k, p, c, d});
  }

  LogPuiseuxSeries build(Direction dir, int q, int truncation) const {
    std::map<int, std::vector<double>> polys;
    for (const auto& [key, sum] : sums_) {
      auto& v = polys[key.first];
      if (static_cast<int>(v.size()) <= key.second) v.resize(key.second + 1, 0.0);
      v[key.second] = sum.value();
    }
    LogPuiseuxSeries s(dir, q, 0, truncation);
    for (auto& [k, v] : polys) s.add_term(k, LogPolynomial(std::move(v)));
    s.set_p(validate_membership(s).p_effective);
    return s.normalized();
  }

  std::vector<ProvenanceEntry> provenance() const {
    std::vector<ProvenanceEntry> out = provenance_;
    std::stable_sort(out.begin(), out.end(), [](const ProvenanceEntry& a, const ProvenanceEntry& b) {
      return a.k != b.k ? a.k < b.k : a.p < b.p;
    });
    return out;
  }

 private:
  std::map<std::pair<int, int>, CompensatedSum> sums_;
  std::vector<ProvenanceEntry> provenance_;
};

void require_multivariate(const SetModel& model) {
  if (model.n < 2) throw UsageError("expansions need n >= 2; one-dimensional sets use the interval formulas");
}

// mu_m = int_0^B r^(2m+n-1) Delta(r) dr
double head_moment(const SetModel& model, int m, double B) {
  const int power = 2 * m + model.n - 1;
  std::vector<double> breaks{0.0};
  const std::vector<double> seams = model_seams(model);
  if (!seams.empty()) {
    for (double b : geometric_breaks(seams.front() * 1e-3, seams.front())) breaks.push_back(b);
  }
  for (double s : seams) {
    if (s < B) breaks.push_back(s);
  }
  breaks.push_back(B);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  QuadOptions opts;
  opts.abs_tol = 1e-15 * std::pow(B, power + 1) * sphere_measure(model.n);
  opts.rel_tol = 1e-13;
  opts.accept_abs = 1e-9 * std::pow(B, power + 1) * sphere_measure(model.n);
  opts.max_intervals = 20000;
  const auto f = [&](double r) { return r <= 0.0 ? 0.0 : std::pow(r, power) * delta_eval(model, r); };
  try {
    return integrate(f, breaks, opts).value;
  } catch (const AccuracyFailure& e) {
    throw ModelError(std::string("profile is not integrable on [0, B]: ") + e.what());
  }
}

}  // namespace

ExpansionResult expand_at_zero(const SetModel& model, int K) {
  require_multivariate(model);
  if (K < 0) throw UsageError("expansion order must be nonnegative");
  const LogPuiseuxSeries& germ = model.delta_zero;
  if (K > germ.truncation_order()) {
    throw InsufficientData("profile germ at 0 is known to order " + std::to_string(germ.truncation_order()) +
                           ", requested " + std::to_string(K));
  }
  const int n = model.n;
  const int q = germ.q();
  const double norm = std::pow(kPi, -0.5 * n);
  Accumulator acc;
  std::optional<int> next_k;
  for (const auto& [k, g] : germ.terms()) {
    if (k > K) {
      if (!next_k) next_k = k;
      continue;
    }
    const Rational half_exp(k, 2 * q);
    const double a = Rational(k, q).to_double() + (n - 1);
    for (int l = 0; l <= g.degree(); ++l) {
      const double c = g.coeff(l);
      if (c == 0.0) continue;
      for (int p = 0; p <= l; ++p) {
        const double C = c * pow2(half_exp - Rational(p)) * binomial(l, p) * norm;
        const double D = shifted_log_moment(a, l - p, kSqrt2);
        acc.add(k, p, C, D, "zero");
      }
    }
  }
  const bool exact = germ.is_exact() && !next_k;
  ExpansionResult out;
  out.n = n;
  out.series = acc.build(Direction::AtZero, 2 * q, exact ? LogPuiseuxSeries::kExact : K);
  out.claimed_remainder_exponent = Rational(2 * K + 1, 4 * q);
  out.provenance = acc.provenance();
  if (exact) {
    out.remainder_constant = 0.0;
  } else if (next_k && *next_k <= germ.truncation_order()) {
    // size of the first omitted group, evaluated at log t = 0
    const LogPolynomial& g = germ.term(*next_k);
    const double a = Rational(*next_k, q).to_double() + (n - 1);
    double size = 0.0;
    for (int l = 0; l <= g.degree(); ++l) {
      size += std::abs(g.coeff(l)) * pow2(Rational(*next_k, 2 * q)) * norm * std::abs(shifted_log_moment(a, l, kSqrt2));
    }
    out.remainder_constant = size;
  }
  return out;
}

ExpansionResult expand_at_infinity(const SetModel& model, int K) {
  require_multivariate(model);
  if (K < 0) throw UsageError("expansion order must be nonnegative");
  const LogPuiseuxSeries& germ = model.delta_infinity;
  if (K > germ.truncation_order()) {
    throw InsufficientData("profile germ at infinity is known to order " + std::to_string(germ.truncation_order()) +
                           ", requested " + std::to_string(K));
  }
  const int n = model.n;
  const int q = germ.q();
  const double B = model.beta;
  const double norm = std::pow(kPi, -0.5 * n);
  Accumulator acc;

  // head: (2 pi t)^(-n/2) sum_m (-1)^m mu_m / (m! (2t)^m), index q (n + 2m)
  for (int m = 0; q * (n + 2 * m) <= K; ++m) {
    const double C = std::pow(2.0 * kPi, -0.5 * n) * ((m % 2 == 0) ? 1.0 : -1.0) / (factorial(m) * std::exp2(m));
    acc.add(q * (n + 2 * m), 0, C, head_moment(model, m, B), "head");
  }

  // tail: c r^(-k/q) (log r)^l over [B, inf)
  const double log_eps0 = std::log(B / kSqrt2);  // log eps = log_eps0 - (1/2) log t
  const double log_sqrt2 = std::log(kSqrt2);
  const int shoulder_order = std::max(0, (K / q - n) / 2 + 1);
  for (const auto& [k, g] : germ.terms()) {
    if (k > K) continue;
    const Rational a = Rational(n - 1) - Rational(k, q);
    const double af = a.to_double();
    for (int l = 0; l <= g.degree(); ++l) {
      const double c = g.coeff(l);
      if (c == 0.0) continue;
      for (int p = 0; p <= l; ++p) {
        const int j = l - p;
        const double C = c * binomial(l, p) / pow2(Rational(p) + Rational(k, 2 * q)) * norm;
        // int_eps^inf e^-s^2 s^a (log(sqrt2 s))^j = D_reg + sum of small-eps terms,
        // with (log(sqrt2 s))^j = sum_u C(j,u) (log sqrt2)^(j-u) (log s)^u
        double D = 0.0;
        if (af > -1.0) {
          D = shifted_log_moment(af, j, kSqrt2);
        } else {
          D = upper_incomplete_log_moment(af, j, kSqrt2, 1.0);
        }
        for (int u = 0; u <= j; ++u) {
          const double w = binomial(j, u) * std::pow(log_sqrt2, j - u);
          const LowerTailExpansion lt = lower_tail_expansion(a, u, shoulder_order);
          if (af <= -1.0) D += w * lt.constant;
          for (const TailTerm& term : lt.terms) {
            // eps^e = (B/sqrt2)^e t^(-e/2): index k + q e
            const Rational idx = Rational(k) + Rational(q) * term.exponent;
            if (!idx.is_integer()) throw Unsupported("non-integral shoulder index");
            const auto index = static_cast<int>(idx.num());
            if (index > K) continue;
            const double scale = std::exp(term.exponent.to_double() * log_eps0);
            // (log eps)^v = sum_x C(v,x) log_eps0^(v-x) (-1/2)^x (log t)^x
            for (int x = 0; x <= term.log_power; ++x) {
              const double lw = binomial(term.log_power, x) * std::pow(log_eps0, term.log_power - x) *
                                std::pow(-0.5, x);
              const double coeff = w * term.coeff * scale * lw;
              if (coeff != 0.0) acc.add(index, p + x, C, coeff, "shoulder");
            }
          }
        }
        acc.add(k, p, C, D, "tail");
      }
    }
  }

  ExpansionResult out;
  out.n = n;
  out.series = acc.build(Direction::AtInfinity, 2 * q, K);
  out.claimed_remainder_exponent = -Rational(2 * K + 1, 4 * q);
  out.provenance = acc.provenance();
  return out;
}

ExpansionResult expand(const SetModel& model, Direction direction, int K) {
  return direction == Direction::AtZero ? expand_at_zero(model, K) : expand_at_infinity(model, K);
}

EvalReport verify_remainder(const SetModel& model, const ExpansionResult& result, int N,
                            std::span<const double> grid, double tol) {
  const LogPuiseuxSeries& s = result.series;
  if (N > s.truncation_order()) throw InsufficientData("N exceeds the truncation order of the expansion");
  if (N < 0) throw UsageError("N must be nonnegative");
  if (grid.size() < 2) throw UsageError("verification grid needs at least two points");
  const bool toward_zero = s.direction() == Direction::AtZero;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const bool ok = toward_zero ? grid[i] < grid[i - 1] : grid[i] > grid[i - 1];
    if (!ok || !(grid[i] > 0.0)) throw UsageError("grid must run monotonically towards the expansion point");
  }

  EvalReport rep;
  rep.direction = s.direction();
  rep.N = N;
  const double e = s.exponent(N).to_double();
  for (double t : grid) {
    const PhiEstimate phi = phi_quadrature(model, t, tol);
    const double partial = partial_sum_eval(s, t, N);
    const double scale = std::pow(t, e);
    double magnitude = std::abs(phi.value);
    const double lt = std::log(t);
    for (const auto& [k, g] : s.terms()) {
      if (k > N) break;
      double poly = 0.0;
      for (int j = 0; j <= g.degree(); ++j) poly += std::abs(g.coeff(j)) * std::pow(std::abs(lt), j);
      magnitude += poly * std::pow(t, s.exponent(k).to_double());
    }
    rep.grid.push_back(t);
    rep.phi_values.push_back(phi.value);
    rep.phi_errors.push_back(phi.error);
    rep.partial_sums.push_back(partial);
    rep.remainder_ratios.push_back((phi.value - partial) / scale);
    rep.noise_floor.push_back((phi.error + 4.0 * std::numeric_limits<double>::epsilon() * magnitude) / scale);
  }
  bool finite = true;
  for (double r : rep.remainder_ratios) finite = finite && std::isfinite(r);
  const auto& r = rep.remainder_ratios;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(std::abs(r[i]) < std::abs(r[i - 1]) || std::abs(r[i]) <= rep.noise_floor[i])) ++rep.violations;
  }
  const double first = std::abs(r.front());
  const double last = std::abs(r.back());
  rep.decay = first > 0.0 ? last / first : (last > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  const bool shrank = last < first || last <= rep.noise_floor.back();
  rep.pass = finite && shrank && rep.violations <= 1;
  return rep;
}

bool is_thin_at_origin(const SetModel& model) {
  require_multivariate(model);
  if (!model.delta_zero.is_zero()) return false;
  if (!(model.alpha < model.beta)) return true;
  const double hi = std::min(model.beta, 2.0 * model.alpha);
  for (int i = 0; i < 16; ++i) {
    const double r = model.alpha + (hi - model.alpha) * (i + 0.5) / 16.0;
    if (delta_eval(model, r) != 0.0) return false;
  }
  return true;
}

bool has_full_tangent_cone(const SetModel& model) {
  require_multivariate(model);
  return model.delta_zero.term(0).coeff(0) > 1e-12;
}

}  // namespace gausstail
