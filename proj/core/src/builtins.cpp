#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "gausstail/errors.hpp"
#include "gausstail/setmodel.hpp"

namespace gausstail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Params {
  std::string name;
  std::map<std::string, double, std::less<>> values;

  double get(std::string_view key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
  int dimension(int fallback) const {
    const double v = get("n", fallback);
    if (v != std::floor(v) || v < 1 || v > 64) throw UsageError("n must be an integer in [1, 64]");
    return static_cast<int>(v);
  }
  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : values) {
      bool ok = false;
      for (auto a : keys) ok = ok || a == k;
      if (!ok) throw UsageError("builtin '" + name + "' has no parameter '" + k + "'");
    }
  }
};

Params parse_spec(std::string_view spec) {
  Params p;
  const auto colon = spec.find(':');
  p.name = std::string(spec.substr(0, colon));
  if (colon == std::string_view::npos) return p;
  std::string_view rest = spec.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw UsageError("expected key=value in '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string_view text = item.substr(eq + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw UsageError("bad number '" + std::string(text) + "' for " + key);
    }
    p.values[key] = v;
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return p;
}

std::string label_of(const std::string& name, std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(17);
  os << name;
  char sep = ':';
  for (const auto& [k, v] : kv) {
    os << sep << k << '=' << v;
    sep = ',';
  }
  return os.str();
}

// Model whose profile is constant on (0, inf).
SetModel constant_profile(int n, double value, std::string label) {
  SetModel m;
  m.n = n;
  m.label = std::move(label);
  m.alpha = m.beta = 1.0;
  m.delta_zero = LogPuiseuxSeries::constant(Direction::AtZero, value);
  m.delta_infinity = LogPuiseuxSeries::constant(Direction::AtInfinity, value);
  return m;
}

SetModel make_full(const Params& p) {
  p.allow({"n"});
  const int n = p.dimension(2);
  if (n == 1) {
    SetModel m;
    m.n = 1;
    m.label = label_of("full", {{"n", 1}});
    m.intervals = {{-kInf, kInf}};
    return m;
  }
  SetModel m = constant_profile(n, sphere_measure(n), label_of("full", {{"n", n}}));
  m.membership = Expr::constant(1.0);
  return m;
}

SetModel make_ball(const Params& p) {
  p.allow({"n", "R"});
  const int n = p.dimension(2);
  const double radius = p.get("R", 1.0);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw UsageError("ball radius must be positive");
  SetModel m;
  m.n = n;
  m.label = label_of("ball", {{"n", n}, {"R", radius}});
  if (n == 1) {
    m.intervals = {{-radius, radius}};
    return m;
  }
  const double s = sphere_measure(n);
  m.alpha = 0.5 * radius;
  m.beta = 2.0 * radius;
  m.delta_zero = LogPuiseuxSeries::constant(Direction::AtZero, s);
  m.delta_infinity = LogPuiseuxSeries::zero(Direction::AtInfinity);
  m.delta_mid = {{m.alpha, radius, Expr::constant(s)}, {radius, m.beta, Expr::constant(0.0)}};
  m.membership = ex::lt(Expr::r(), ex::c(radius));
  return m;
}

SetModel make_halfspace(const Params& p) {
  p.allow({"n"});
  const int n = p.dimension(2);
  if (n == 1) {
    SetModel m;
    m.n = 1;
    m.label = label_of("halfspace", {{"n", 1}});
    m.intervals = {{0.0, kInf}};
    return m;
  }
  SetModel m = constant_profile(n, 0.5 * sphere_measure(n), label_of("halfspace", {{"n", n}}));
  // x_n > 0: phi in (0, pi) in the plane, last latitude positive otherwise
  m.membership = n == 2 ? ex::gt(Expr::phi(), ex::c(0.0)) : ex::gt(Expr::theta(n - 2), ex::c(0.0));
  return m;
}

// Measure of the cap of angular radius g on the unit sphere of R^n:
// sphere_measure(n - 1) * int_0^g sin^(n-2).
double cap_measure(int n, double g) {
  const int m = n - 2;
  double even = g;                  // int_0^g sin^0
  double odd = 1.0 - std::cos(g);   // int_0^g sin^1
  const double s = std::sin(g);
  const double c = std::cos(g);
  for (int k = 2; k <= m; ++k) {
    const double next = (-std::pow(s, k - 1) * c + (k - 1) * (k % 2 == 0 ? even : odd)) / k;
    (k % 2 == 0 ? even : odd) = next;
  }
  const double integral = m % 2 == 0 ? even : odd;
  return sphere_measure(n - 1) * integral;
}

SetModel make_cone(const Params& p) {
  p.allow({"n", "angle"});
  const int n = p.dimension(2);
  const double g = p.get("angle", kPi / 4);
  if (n < 2) throw UsageError("cone needs n >= 2");
  const double limit = n == 2 ? 0.5 * kPi : kPi;
  if (!(g > 0.0) || !(g <= limit)) throw UsageError("cone angle out of range");
  SetModel m = constant_profile(n, cap_measure(n, g), label_of("cone", {{"n", n}, {"angle", g}}));
  if (n == 2) {
    m.membership = ex::all({ex::gt(Expr::phi(), ex::c(0.5 * kPi - g)), ex::lt(Expr::phi(), ex::c(0.5 * kPi + g))});
  } else {
    m.membership = ex::gt(Expr::theta(n - 2), ex::c(0.5 * kPi - g));
  }
  return m;
}

// {r > 1, 0 < phi < 1/r^2} in the plane
SetModel make_ex34(const Params& p) {
  p.allow({});
  LogPuiseuxSeries far(Direction::AtInfinity, 1, 0, LogPuiseuxSeries::kExact);
  far.add_term(2, LogPolynomial::constant(1.0));
  const Expr inv_r2 = ex::c(1.0) / (Expr::r() * Expr::r());
  const SectorBand band{1.0, kInf, RadialFunction(0.0), RadialFunction(inv_r2, std::nullopt, far)};
  return sector2d(std::span(&band, 1), "ex34");
}

// {r < 1/2, 0 < phi < r / (1 - r^2)} in the plane
SetModel make_ex38(const Params& p) {
  p.allow({});
  constexpr int kTerms = 60;
  LogPuiseuxSeries germ(Direction::AtZero, 1, 0, 2 * kTerms);
  for (int j = 0; j < kTerms; ++j) germ.add_term(2 * j + 1, LogPolynomial::constant(1.0));
  const Expr r = Expr::r();
  const Expr bound = r / (ex::c(1.0) - r * r);
  const SectorBand band{0.0, 0.5, RadialFunction(0.0), RadialFunction(bound, germ)};
  return sector2d(std::span(&band, 1), "ex38");
}

// {r < 1, r < phi < 1, 0 < theta1 < asin(r / phi)} in R^3, Delta(r) = -r log r on (0, 1)
SetModel make_ex39(const Params& p) {
  p.allow({});
  SetModel m;
  m.n = 3;
  m.label = "ex39";
  m.alpha = 0.5;
  m.beta = 2.0;
  m.delta_zero = LogPuiseuxSeries(Direction::AtZero, 1, 1, LogPuiseuxSeries::kExact);
  m.delta_zero.add_term(1, LogPolynomial({0.0, -1.0}));
  m.delta_infinity = LogPuiseuxSeries::zero(Direction::AtInfinity);
  const Expr r = Expr::r();
  m.delta_mid = {{0.5, 1.0, -(r * ex::log(r))}, {1.0, 2.0, Expr::constant(0.0)}};
  m.membership = ex::all({ex::lt(r, ex::c(1.0)), ex::gt(Expr::phi(), r), ex::lt(Expr::phi(), ex::c(1.0)),
                          ex::gt(Expr::theta(1), ex::c(0.0)), ex::lt(Expr::theta(1), ex::asin(r / Expr::phi()))});
  return m;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"full", "ball", "halfspace", "cone", "ex34", "ex38", "ex39"}; }

SetModel builtin(std::string_view spec) {
  const Params p = parse_spec(spec);
  SetModel m;
  if (p.name == "full") {
    m = make_full(p);
  } else if (p.name == "ball") {
    m = make_ball(p);
  } else if (p.name == "halfspace") {
    m = make_halfspace(p);
  } else if (p.name == "cone") {
    m = make_cone(p);
  } else if (p.name == "ex34") {
    m = make_ex34(p);
  } else if (p.name == "ex38") {
    m = make_ex38(p);
  } else if (p.name == "ex39") {
    m = make_ex39(p);
  } else {
    throw UsageError("unknown builtin set '" + p.name + "'");
  }
  require_valid(m);
  return m;
}

}  // namespace gausstail
