#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "gausstail/errors.hpp"
#include "gausstail/expansion.hpp"
#include "gausstail/io.hpp"
#include "gausstail/setmodel.hpp"
#include "json.hpp"

using namespace gausstail;

namespace {
std::vector<std::string> names() {
  return {"full:n=1", "halfspace:n=1", "full:n=2",         "ball:n=3,R=0.7", "halfspace:n=4",
          "cone:n=2,angle=0.5", "cone:n=4,angle=1.2", "ex34", "ex38", "ex39"};
}

LogPuiseuxSeries random_series(std::mt19937& rng) {
  std::uniform_int_distribution<int> qd(1, 4);
  std::uniform_int_distribution<int> pd(0, 3);
  std::uniform_int_distribution<int> kd(0, 12);
  std::normal_distribution<double> cd(0.0, 1e3);
  const int p = pd(rng);
  const Direction d = rng() % 2 ? Direction::AtZero : Direction::AtInfinity;
  const int trunc = rng() % 3 ? 12 : LogPuiseuxSeries::kExact;
  LogPuiseuxSeries s(d, qd(rng), p, trunc);
  for (int i = 0; i < 6; ++i) {
    const int k = kd(rng);
    std::vector<double> c(static_cast<std::size_t>(k == 0 ? 1 : p + 1));
    for (double& x : c) x = cd(rng) * std::exp(cd(rng) / 100.0);
    s.add_term(k, LogPolynomial(c));
  }
  return s;
}
}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t bits = rng();
    double x = 0.0;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("series round trip is byte identical") {
  std::mt19937 rng(21);
  for (int i = 0; i < 200; ++i) {
    const LogPuiseuxSeries s = random_series(rng);
    const std::string a = series_to_json(s);
    const LogPuiseuxSeries back = series_from_json(a);
    CHECK(back == s);
    CHECK(series_to_json(back) == a);
  }
}

TEST_CASE("set description round trip is byte identical") {
  for (const std::string& name : names()) {
    const SetModel m = builtin(name);
    const std::string a = set_to_json(m);
    const SetModel back = set_from_json(a);
    CAPTURE(name);
    CHECK(set_to_json(back) == a);
    for (double r : {0.05, 0.4, 1.0, 1.9, 8.0}) {
      if (m.n >= 2) CHECK(delta_eval(back, r) == delta_eval(m, r));
    }
    if (m.n >= 2) {
      const double pt[] = {0.3, 0.2, 0.1, 0.05};
      const std::span<const double> x(pt, static_cast<std::size_t>(m.n));
      CHECK(membership(back, x) == membership(m, x));
    }
  }
}

TEST_CASE("expansion round trip is byte identical") {
  for (const std::string& name : names()) {
    const SetModel m = builtin(name);
    if (m.n < 2) continue;
    for (Direction d : {Direction::AtZero, Direction::AtInfinity}) {
      const ExpansionResult r = expand(m, d, 4);
      const std::string a = expansion_to_json(r);
      const ExpansionResult back = expansion_from_json(a);
      CAPTURE(name);
      CHECK(expansion_to_json(back) == a);
      CHECK(back.series == r.series);
      CHECK(back.claimed_remainder_exponent == r.claimed_remainder_exponent);
      CHECK(back.remainder_constant == r.remainder_constant);
      CHECK(back.provenance.size() == r.provenance.size());
    }
  }
}

TEST_CASE("expression round trip") {
  const Expr r = Expr::r();
  const Expr e = ex::all({ex::lt(r, ex::c(1.0)), ex::gt(Expr::phi(), ex::log(r) * ex::c(0.1)),
                          ex::negate(ex::ge(ex::asin(r), ex::pow(ex::c(2.0), ex::c(-0.5))))});
  const std::string a = expr_to_json(e);
  CHECK(expr_to_json(expr_from_json(a)) == a);
  CHECK(expr_from_json(a) == e);
}

TEST_CASE("expansion document carries the provenance table as decimal strings") {
  const auto doc = nlohmann::json::parse(expansion_to_json(expand_at_zero(builtin("ex39"), 4)));
  REQUIRE(doc.contains("provenance"));
  REQUIRE(!doc["provenance"].empty());
  CHECK(doc["provenance"][0]["C"].is_string());
  CHECK(doc["provenance"][0]["D"].is_string());
}

TEST_CASE("malformed input raises parse errors") {
  CHECK_THROWS_AS(series_from_json("{"), ParseError);
  CHECK_THROWS_AS(series_from_json(R"({"direction": "sideways", "q": 1, "p": 0, "terms": [], "truncation_order": 1})"),
                  ParseError);
  CHECK_THROWS_AS(expr_from_json(R"(["frobnicate", 1])"), ParseError);
  CHECK_THROWS_AS(expr_from_json(R"(["+", 1])"), ParseError);
  CHECK_THROWS_AS(expr_from_json(R"("zeta")"), ParseError);
  CHECK_THROWS_AS(set_from_json(R"({"n": 2})"), ParseError);
  CHECK_THROWS_AS(expansion_from_json("[]"), ParseError);
}

TEST_CASE("invalid set descriptions are rejected") {
  auto doc = nlohmann::ordered_json::parse(set_to_json(builtin("ball:n=2,R=1")));
  doc["delta_mid"][0]["expr"] = 100.0;
  CHECK_THROWS_AS(set_from_json(doc.dump()), ModelError);
}

}
