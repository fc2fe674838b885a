#include "gausstail/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "gausstail/errors.hpp"
#include "json.hpp"

namespace gausstail {

using Json = nlohmann::ordered_json;

namespace {

Json direction_json(Direction d) { return to_string(d); }

Direction direction_from(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "zero") return Direction::AtZero;
  if (s == "infinity") return Direction::AtInfinity;
  throw ParseError("direction must be \"zero\" or \"infinity\"");
}

Json endpoint_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double endpoint_from(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("bad interval endpoint '" + s + "'");
  }
  return j.get<double>();
}

Json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double decimal_from(const Json& j) {
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError("bad decimal string '" + s + "'");
  return v;
}

Json series_json(const LogPuiseuxSeries& s) {
  Json j;
  j["direction"] = direction_json(s.direction());
  j["q"] = s.q();
  j["p"] = s.p();
  Json terms = Json::array();
  for (const auto& [k, g] : s.terms()) {
    Json coeffs = Json::array();
    for (double c : g.coeffs()) coeffs.push_back(c);
    terms.push_back(Json{{"k", k}, {"coeffs", coeffs}});
  }
  j["terms"] = terms;
  if (s.is_exact()) {
    j["truncation_order"] = "exact";
  } else {
    j["truncation_order"] = s.truncation_order();
  }
  return j;
}

LogPuiseuxSeries series_from(const Json& j) {
  const Json& tr = j.at("truncation_order");
  int truncation = 0;
  if (tr.is_string()) {
    if (tr.get<std::string>() != "exact") throw ParseError("truncation_order must be an integer or \"exact\"");
    truncation = LogPuiseuxSeries::kExact;
  } else {
    truncation = tr.get<int>();
  }
  const int q = j.at("q").get<int>();
  const int p = j.at("p").get<int>();
  if (q < 1) throw ParseError("q must be positive");
  if (p < -1) throw ParseError("p must be at least -1");
  if (truncation < 0) throw ParseError("truncation_order must be nonnegative");
  LogPuiseuxSeries s(direction_from(j.at("direction")), q, p, truncation);
  for (const Json& t : j.at("terms")) {
    const int k = t.at("k").get<int>();
    if (k < 0) throw ParseError("term index must be nonnegative");
    s.add_term(k, LogPolynomial(t.at("coeffs").get<std::vector<double>>()));
  }
  return s;
}

Json expr_json(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Const: return e.value();
    case Expr::Op::Var: return slot_name(e.slot());
    default: {
      Json arr = Json::array();
      arr.push_back(std::string(op_name(e.op())));
      for (const Expr& a : e.args()) arr.push_back(expr_json(a));
      return arr;
    }
  }
}

Expr expr_from(const Json& j) {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (j.is_string()) return Expr::variable(slot_from_name(j.get<std::string>()));
  if (j.is_array() && !j.empty() && j.front().is_string()) {
    const Expr::Op op = op_from_name(j.front().get<std::string>());
    std::vector<Expr> args;
    for (std::size_t i = 1; i < j.size(); ++i) args.push_back(expr_from(j[i]));
    return Expr::make(op, std::move(args));
  }
  throw ParseError("expression must be a number, a variable name or [operator, args...]");
}

template <class F>
auto guarded(std::string_view text, F&& f) {
  try {
    return f(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string series_to_json(const LogPuiseuxSeries& s) { return dump(series_json(s)); }

LogPuiseuxSeries series_from_json(std::string_view text) {
  return guarded(text, [](const Json& j) { return series_from(j); });
}

std::string expr_to_json(const Expr& e) { return dump(expr_json(e)); }

Expr expr_from_json(std::string_view text) {
  return guarded(text, [](const Json& j) { return expr_from(j); });
}

std::string set_to_json(const SetModel& m) {
  Json j;
  j["n"] = m.n;
  j["label"] = m.label;
  if (m.n == 1) {
    Json iv = Json::array();
    for (const Interval& i : m.intervals) iv.push_back(Json::array({endpoint_json(i.lo), endpoint_json(i.hi)}));
    j["intervals"] = iv;
    return dump(j);
  }
  j["alpha"] = m.alpha;
  j["beta"] = m.beta;
  j["delta_zero"] = series_json(m.delta_zero);
  j["delta_infinity"] = series_json(m.delta_infinity);
  Json mid = Json::array();
  for (const MidPiece& p : m.delta_mid) mid.push_back(Json{{"from", p.from}, {"to", p.to}, {"expr", expr_json(p.expr)}});
  j["delta_mid"] = mid;
  j["membership"] = m.membership ? expr_json(*m.membership) : Json(nullptr);
  return dump(j);
}

SetModel set_from_json(std::string_view text) {
  SetModel m = guarded(text, [](const Json& j) {
    SetModel m;
    m.n = j.at("n").get<int>();
    m.label = j.value("label", std::string("custom"));
    if (m.n == 1) {
      for (const Json& iv : j.at("intervals")) {
        if (!iv.is_array() || iv.size() != 2) throw ParseError("interval must be [lo, hi]");
        m.intervals.push_back({endpoint_from(iv[0]), endpoint_from(iv[1])});
      }
      return m;
    }
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.delta_zero = series_from(j.at("delta_zero"));
    m.delta_infinity = series_from(j.at("delta_infinity"));
    for (const Json& p : j.at("delta_mid")) {
      m.delta_mid.push_back({p.at("from").get<double>(), p.at("to").get<double>(), expr_from(p.at("expr"))});
    }
    if (j.contains("membership") && !j.at("membership").is_null()) m.membership = expr_from(j.at("membership"));
    return m;
  });
  require_valid(m);
  return m;
}

std::string expansion_to_json(const ExpansionResult& r) {
  Json j;
  j["n"] = r.n;
  j["series"] = series_json(r.series);
  j["claimed_remainder_exponent"] = r.claimed_remainder_exponent.to_string();
  j["remainder_constant"] = r.remainder_constant ? Json(*r.remainder_constant) : Json(nullptr);
  Json prov = Json::array();
  for (const ProvenanceEntry& e : r.provenance) {
    prov.push_back(Json{{"kind", e.kind}, {"k", e.k}, {"p", e.p}, {"C", format_double(e.C)}, {"D", format_double(e.D)}});
  }
  j["provenance"] = prov;
  return dump(j);
}

ExpansionResult expansion_from_json(std::string_view text) {
  return guarded(text, [](const Json& j) {
    ExpansionResult r;
    r.n = j.at("n").get<int>();
    r.series = series_from(j.at("series"));
    r.claimed_remainder_exponent = Rational::parse(j.at("claimed_remainder_exponent").get<std::string>());
    if (!j.at("remainder_constant").is_null()) r.remainder_constant = j.at("remainder_constant").get<double>();
    for (const Json& e : j.at("provenance")) {
      r.provenance.push_back({e.at("kind").get<std::string>(), e.at("k").get<int>(), e.at("p").get<int>(),
                              decimal_from(e.at("C")), decimal_from(e.at("D"))});
    }
    return r;
  });
}

std::string report_to_json(const EvalReport& r) {
  Json j;
  j["direction"] = direction_json(r.direction);
  j["N"] = r.N;
  j["pass"] = r.pass;
  j["violations"] = r.violations;
  j["decay"] = finite_or_string(r.decay);
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    rows.push_back(Json{{"t", finite_or_string(r.grid[i])},
                        {"phi", finite_or_string(r.phi_values[i])},
                        {"phi_error", finite_or_string(r.phi_errors[i])},
                        {"partial_sum", finite_or_string(r.partial_sums[i])},
                        {"ratio", finite_or_string(r.remainder_ratios[i])},
                        {"noise_floor", finite_or_string(r.noise_floor[i])}});
  }
  j["rows"] = rows;
  return dump(j);
}

}  // namespace gausstail
