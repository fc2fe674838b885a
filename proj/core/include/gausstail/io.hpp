#pragma once

#include <string>
#include <string_view>

#include "gausstail/expansion.hpp"
#include "gausstail/expr.hpp"
#include "gausstail/series.hpp"
#include "gausstail/setmodel.hpp"

namespace gausstail {

/// %.17g, enough digits to round-trip a double.
std::string format_double(double x);

// JSON documents. Parsers throw ParseError on malformed input; set
// descriptions are additionally validated (ModelError).
//
// series:     {"direction": "zero"|"infinity", "q", "p",
//              "terms": [{"k", "coeffs": [...]}], "truncation_order": int|"exact"}
// expression: number | variable name | [operator, args...]
// set:        {"n", "label", "alpha", "beta", "delta_zero", "delta_infinity",
//              "delta_mid": [{"from", "to", "expr"}], "membership": expr|null}
//             or, for n = 1, {"n": 1, "label", "intervals": [[lo, hi], ...]}
//             with "inf"/"-inf" for infinite endpoints

std::string series_to_json(const LogPuiseuxSeries& s);
LogPuiseuxSeries series_from_json(std::string_view text);

std::string expr_to_json(const Expr& e);
Expr expr_from_json(std::string_view text);

std::string set_to_json(const SetModel& m);
SetModel set_from_json(std::string_view text);

std::string expansion_to_json(const ExpansionResult& r);
ExpansionResult expansion_from_json(std::string_view text);

std::string report_to_json(const EvalReport& r);

}  // namespace gausstail
