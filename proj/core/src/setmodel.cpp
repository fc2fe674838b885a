#include "gausstail/setmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "gausstail/errors.hpp"
#include "gausstail/moments.hpp"

namespace gausstail {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// g(T - shift) for a log polynomial g.
LogPolynomial shift_log(const LogPolynomial& g, double shift) {
  std::vector<double> out(std::max(0, g.degree() + 1), 0.0);
  for (int l = 0; l <= g.degree(); ++l) {
    for (int u = 0; u <= l; ++u) {
      out[u] += g.coeff(l) * binomial(l, u) * std::pow(-shift, l - u);
    }
  }
  return LogPolynomial(std::move(out));
}

LogPuiseuxSeries dilate_series(const LogPuiseuxSeries& f, double lambda) {
  LogPuiseuxSeries out(f.direction(), f.q(), f.p(), f.truncation_order());
  const double log_lambda = std::log(lambda);
  for (const auto& [k, g] : f.terms()) {
    // r^e at r / lambda picks up lambda^(-e)
    const double factor = std::pow(lambda, -f.exponent(k).to_double());
    out.add_term(k, factor * shift_log(g, log_lambda));
  }
  return out;
}

bool close_enough(double series_value, double mid_value) {
  return std::abs(series_value - mid_value) <= 1e-8 * (1.0 + std::abs(mid_value));
}

}  // namespace

double sphere_measure(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double angular_weight(int n, std::span<const double> theta) {
  if (n < 2) throw DomainError("angular weight needs n >= 2");
  if (static_cast<int>(theta.size()) != n - 2) throw DomainError("expected n - 2 angles");
  double w = 1.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (!(std::abs(theta[j]) < 0.5 * kPi)) throw DomainError("angle outside (-pi/2, pi/2)");
    w *= std::pow(std::cos(theta[j]), static_cast<double>(j + 1));
  }
  return w;
}

std::vector<double> to_polar(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("polar coordinates need n >= 2");
  std::vector<double> out(n);
  double partial = std::hypot(x[0], x[1]);
  out[1] = std::atan2(x[1], x[0]);
  for (std::size_t j = 2; j < n; ++j) {
    out[j] = std::atan2(x[j], partial);
    partial = std::hypot(partial, x[j]);
  }
  out[0] = partial;
  return out;
}

std::vector<double> from_polar(std::span<const double> polar) {
  const std::size_t n = polar.size();
  if (n < 2) throw DomainError("polar coordinates need n >= 2");
  std::vector<double> x(n);
  double radius = polar[0];
  for (std::size_t j = n - 1; j >= 2; --j) {
    x[j] = radius * std::sin(polar[j]);
    radius *= std::cos(polar[j]);
  }
  x[0] = radius * std::cos(polar[1]);
  x[1] = radius * std::sin(polar[1]);
  return x;
}

double delta_eval(const SetModel& model, double r) {
  if (model.n < 2) throw UsageError("one-dimensional models are described by intervals");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius must be positive and finite");
  if (r <= model.alpha) return full_sum_eval(model.delta_zero, r);
  if (r >= model.beta) return full_sum_eval(model.delta_infinity, r);
  for (const MidPiece& piece : model.delta_mid) {
    if (r >= piece.from && r <= piece.to) return piece.expr.eval_r(r);
  }
  throw ModelError("no profile piece covers r = " + fmt(r));
}

bool membership(const SetModel& model, std::span<const double> point) {
  if (static_cast<int>(point.size()) != model.n) throw UsageError("point has the wrong dimension");
  if (model.n == 1) {
    if (model.intervals.empty() && !model.membership) throw Unsupported("model has no membership data");
    for (const Interval& iv : model.intervals) {
      if (point[0] > iv.lo && point[0] < iv.hi) return true;
    }
    return false;
  }
  if (!model.membership) throw Unsupported("model has no membership predicate");
  const std::vector<double> polar = to_polar(point);
  return model.membership->eval(polar) != 0.0;
}

std::vector<double> model_seams(const SetModel& model) {
  std::set<double> s{model.alpha, model.beta};
  for (const MidPiece& piece : model.delta_mid) {
    s.insert(piece.from);
    s.insert(piece.to);
  }
  std::vector<double> out;
  for (double v : s) {
    if (v >= model.alpha && v <= model.beta && v > 0.0) out.push_back(v);
  }
  return out;
}

ValidationReport validate(const SetModel& model) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.problems.push_back(std::move(msg));
  };
  if (model.n < 1) {
    fail("dimension must be positive");
    return rep;
  }
  if (model.n == 1) {
    std::vector<Interval> iv = model.intervals;
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < iv.size(); ++i) {
      if (!(iv[i].lo < iv[i].hi)) fail("empty or reversed interval");
      if (i > 0 && iv[i].lo < iv[i - 1].hi) fail("overlapping intervals");
    }
    return rep;
  }
  if (!(model.alpha > 0.0) || !std::isfinite(model.alpha)) fail("alpha must be positive and finite");
  if (!(model.beta >= model.alpha) || !std::isfinite(model.beta)) fail("beta must be finite and at least alpha");
  if (model.delta_zero.direction() != Direction::AtZero) fail("delta_zero must be a series at zero");
  if (model.delta_infinity.direction() != Direction::AtInfinity) fail("delta_infinity must be a series at infinity");
  if (!rep.ok) return rep;

  for (const auto* s : {&model.delta_zero, &model.delta_infinity}) {
    const MembershipReport m = validate_membership(*s);
    if (!m.ok) fail(std::string("germ at ") + to_string(s->direction()) + " violates its log-power bound");
    if (m.p_effective > model.n - 2) {
      fail(std::string("germ at ") + to_string(s->direction()) + " has log power above n - 2");
    }
  }

  if (model.alpha < model.beta) {
    std::vector<MidPiece> pieces = model.delta_mid;
    std::sort(pieces.begin(), pieces.end(), [](const MidPiece& a, const MidPiece& b) { return a.from < b.from; });
    double reach = model.alpha;
    for (const MidPiece& p : pieces) {
      if (!(p.from <= p.to)) fail("mid piece with reversed ends");
      if (p.from > reach) break;
      reach = std::max(reach, p.to);
    }
    if (reach < model.beta) fail("mid pieces leave a gap in [alpha, beta] at r = " + fmt(reach));
    if (rep.ok) {
      auto mid_at = [&](double r) {
        for (const MidPiece& p : pieces) {
          if (r >= p.from && r <= p.to) return p.expr.eval_r(r);
        }
        return 0.0;
      };
      const double z = full_sum_eval(model.delta_zero, model.alpha);
      const double za = mid_at(model.alpha);
      if (!close_enough(z, za)) fail("seam mismatch at alpha: " + fmt(z) + " vs " + fmt(za));
      // the last piece reaching beta is the one adjacent to the far germ
      double zb = 0.0;
      for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
        if (model.beta >= it->from && model.beta <= it->to) {
          zb = it->expr.eval_r(model.beta);
          break;
        }
      }
      const double w = full_sum_eval(model.delta_infinity, model.beta);
      if (!close_enough(w, zb)) fail("seam mismatch at beta: " + fmt(w) + " vs " + fmt(zb));
    }
  } else {
    const double z = full_sum_eval(model.delta_zero, model.alpha);
    const double w = full_sum_eval(model.delta_infinity, model.alpha);
    if (!close_enough(z, w)) fail("germs disagree at alpha = beta");
  }
  if (!rep.ok) return rep;

  const double total = sphere_measure(model.n);
  const double lo = std::min(model.alpha, 1.0) * 1e-4;
  const double hi = std::max(model.beta, 1.0) * 1e4;
  constexpr int kProbes = 400;
  for (int i = 0; i <= kProbes; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / kProbes);
    const double d = delta_eval(model, r);
    if (!(d >= -1e-9) || !(d <= total + 1e-9)) {
      fail("profile outside [0, sphere measure] at r = " + fmt(r) + ": " + fmt(d));
      break;
    }
  }
  return rep;
}

void require_valid(const SetModel& model) {
  const ValidationReport rep = validate(model);
  if (rep.ok) return;
  std::string msg = "invalid set model '" + model.label + "':";
  for (const std::string& p : rep.problems) msg += " " + p + ";";
  throw ModelError(msg);
}

SetModel dilate(const SetModel& model, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("dilation factor must be positive");
  SetModel out = model;
  std::ostringstream label;
  label.precision(17);
  label << lambda << "*" << model.label;
  out.label = label.str();
  if (model.n == 1) {
    for (Interval& iv : out.intervals) {
      iv.lo *= lambda;
      iv.hi *= lambda;
    }
    return out;
  }
  out.alpha = model.alpha * lambda;
  out.beta = model.beta * lambda;
  out.delta_zero = dilate_series(model.delta_zero, lambda);
  out.delta_infinity = dilate_series(model.delta_infinity, lambda);
  const Expr scaled_r = Expr::r() / Expr::constant(lambda);
  for (MidPiece& p : out.delta_mid) {
    p.from *= lambda;
    p.to *= lambda;
    p.expr = substitute(p.expr, Expr::kR, scaled_r);
  }
  if (out.membership) out.membership = substitute(*out.membership, Expr::kR, scaled_r);
  return out;
}

namespace {

LogPuiseuxSeries germ_of(const RadialFunction& f, Direction d) {
  const auto& g = d == Direction::AtZero ? f.germ_zero : f.germ_infinity;
  if (g) {
    if (g->direction() != d) throw ModelError("sector bound germ has the wrong direction");
    return *g;
  }
  if (auto c = f.expr.constant_value()) return LogPuiseuxSeries::constant(d, *c);
  throw ModelError(std::string("sector bound needs a series germ at ") + to_string(d));
}

Expr band_width(const SectorBand& b) {
  const auto lo = b.phi_lo.expr.constant_value();
  if (lo && *lo == 0.0) return b.phi_hi.expr;
  const auto hi = b.phi_hi.expr.constant_value();
  if (lo && hi) return Expr::constant(*hi - *lo);
  return b.phi_hi.expr - b.phi_lo.expr;
}

void check_band(const SectorBand& b) {
  if (!(b.r_lo >= 0.0) || !(b.r_hi > b.r_lo)) throw ModelError("sector band with empty radial range");
  const double lo = b.r_lo > 0.0 ? b.r_lo : (std::isfinite(b.r_hi) ? b.r_hi * 1e-6 : 1e-6);
  const double hi = std::isfinite(b.r_hi) ? b.r_hi : std::max(lo, 1.0) * 1e6;
  constexpr int kProbes = 64;
  for (int i = 0; i <= kProbes; ++i) {
    // interior probes only: the band is open in r
    const double u = (i + 0.5) / (kProbes + 1);
    const double r = lo * std::pow(hi / lo, u);
    const double a = b.phi_lo.expr.eval_r(r);
    const double c = b.phi_hi.expr.eval_r(r);
    if (!(a >= -kPi - 1e-12) || !(c <= kPi + 1e-12)) throw ModelError("sector bound leaves [-pi, pi] at r = " + fmt(r));
    if (!(a <= c)) throw ModelError("sector bounds cross at r = " + fmt(r));
  }
}

}  // namespace

SetModel sector2d(std::span<const SectorBand> bands, std::string label) {
  SetModel m;
  m.n = 2;
  m.label = std::move(label);
  std::set<double> breaks;
  for (const SectorBand& b : bands) {
    check_band(b);
    if (b.r_lo > 0.0) breaks.insert(b.r_lo);
    if (std::isfinite(b.r_hi)) breaks.insert(b.r_hi);
  }
  if (breaks.empty()) {
    m.alpha = m.beta = 1.0;
  } else {
    m.alpha = 0.5 * *breaks.begin();
    m.beta = 2.0 * *breaks.rbegin();
  }

  m.delta_zero = LogPuiseuxSeries::zero(Direction::AtZero);
  m.delta_infinity = LogPuiseuxSeries::zero(Direction::AtInfinity);
  std::vector<Expr> member;
  for (const SectorBand& b : bands) {
    if (b.r_lo == 0.0) {
      m.delta_zero = series_add(m.delta_zero, series_add(germ_of(b.phi_hi, Direction::AtZero),
                                                         -germ_of(b.phi_lo, Direction::AtZero)));
    }
    if (!std::isfinite(b.r_hi)) {
      m.delta_infinity = series_add(m.delta_infinity, series_add(germ_of(b.phi_hi, Direction::AtInfinity),
                                                                 -germ_of(b.phi_lo, Direction::AtInfinity)));
    }
    std::vector<Expr> conj;
    if (b.r_lo > 0.0) conj.push_back(ex::gt(Expr::r(), ex::c(b.r_lo)));
    if (std::isfinite(b.r_hi)) conj.push_back(ex::lt(Expr::r(), ex::c(b.r_hi)));
    conj.push_back(ex::gt(Expr::phi(), b.phi_lo.expr));
    conj.push_back(ex::lt(Expr::phi(), b.phi_hi.expr));
    member.push_back(ex::all(std::move(conj)));
  }
  m.membership = ex::any(std::move(member));

  std::vector<double> cuts{m.alpha};
  for (double v : breaks) {
    if (v > m.alpha && v < m.beta) cuts.push_back(v);
  }
  if (m.beta > m.alpha) cuts.push_back(m.beta);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    std::vector<Expr> widths;
    for (const SectorBand& b : bands) {
      if (b.r_lo < mid && mid < b.r_hi) widths.push_back(band_width(b));
    }
    Expr e = widths.empty() ? Expr::constant(0.0) : widths.front();
    for (std::size_t j = 1; j < widths.size(); ++j) e = e + widths[j];
    m.delta_mid.push_back({cuts[i], cuts[i + 1], e});
  }
  require_valid(m);
  return m;
}

}  // namespace gausstail
