#include "gausstail/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gausstail/errors.hpp"
#include "gausstail/evaluator.hpp"
#include "gausstail/expansion.hpp"
#include "gausstail/io.hpp"
#include "gausstail/setmodel.hpp"

namespace gausstail::cli {

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "'");
  }
  if (used != s.size()) throw UsageError("bad number '" + s + "'");
  return v;
}

SetModel load_set(const std::string& input) {
  if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input);
    std::stringstream buf;
    buf << in.rdbuf();
    return set_from_json(buf.str());
  }
  return builtin(input);
}

Direction parse_direction(const std::string& s) {
  if (s == "zero" || s == "0") return Direction::AtZero;
  if (s == "infinity" || s == "inf") return Direction::AtInfinity;
  throw UsageError("direction must be 'zero' or 'infinity'");
}

// Writes to the -o file when given, otherwise to out.
void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty()) {
    out << data;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << data;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec, int points) {
  std::vector<double> grid;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const double a = parse_number(spec.substr(0, dots));
    const double b = parse_number(spec.substr(dots + 2));
    if (!(a > 0.0) || !(b > 0.0)) throw UsageError("grid endpoints must be positive");
    if (points <= 0) points = std::max(2, static_cast<int>(std::lround(std::abs(std::log10(b / a)))) + 1);
    if (points < 2) throw UsageError("grid needs at least two points");
    for (int i = 0; i < points; ++i) {
      grid.push_back(a * std::pow(b / a, static_cast<double>(i) / (points - 1)));
    }
    grid.back() = b;
    return grid;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_number(item));
  if (grid.empty()) throw UsageError("empty grid");
  for (double t : grid) {
    if (!(t > 0.0)) throw UsageError("times must be positive");
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian probabilities of tame sets and their asymptotic expansions", "gausstail"};
  app.require_subcommand(1);

  std::string input;
  std::string at = "zero";
  std::string out_path;
  int order = 4;
  int terms = 1;
  std::string grid_spec;
  int points = 0;
  std::string t_spec;
  std::string method = "quad";
  std::int64_t samples = 1000000;
  std::uint64_t seed = 7;
  double tol = 1e-12;

  auto* expand_cmd = app.add_subcommand("expand", "Asymptotic expansion of Phi at 0 or infinity (JSON)");
  expand_cmd->add_option("input", input, "Set description file or builtin shorthand")->required();
  expand_cmd->add_option("--at", at, "zero | infinity");
  expand_cmd->add_option("-K,--order", order, "Truncation order");
  expand_cmd->add_option("-o,--out", out_path, "Output file");

  auto* eval_cmd = app.add_subcommand("eval", "Phi on a grid of times (CSV)");
  eval_cmd->add_option("input", input, "Set description file or builtin shorthand")->required();
  auto* t_opt = eval_cmd->add_option("--t", t_spec, "Single time or comma list");
  auto* g_opt = eval_cmd->add_option("--grid", grid_spec, "a..b (log spaced) or comma list");
  t_opt->excludes(g_opt);
  eval_cmd->add_option("--points", points, "Number of grid points for a..b");
  eval_cmd->add_option("--method", method, "quad | mc")->check(CLI::IsMember({"quad", "mc"}));
  eval_cmd->add_option("--samples", samples, "Monte Carlo samples");
  eval_cmd->add_option("--seed", seed, "Monte Carlo seed");
  eval_cmd->add_option("--tol", tol, "Quadrature tolerance");
  eval_cmd->add_option("-o,--out", out_path, "Output file");

  auto* verify_cmd = app.add_subcommand("verify", "Check the remainder of the N-th partial sum (JSON)");
  verify_cmd->add_option("input", input, "Set description file or builtin shorthand")->required();
  verify_cmd->add_option("--at", at, "zero | infinity");
  verify_cmd->add_option("-N,--terms", terms, "Partial sum index");
  verify_cmd->add_option("-K,--order", order, "Expansion order (default N)");
  verify_cmd->add_option("--grid", grid_spec, "a..b (log spaced) or comma list");
  verify_cmd->add_option("--points", points, "Number of grid points for a..b");
  verify_cmd->add_option("--tol", tol, "Quadrature tolerance");
  verify_cmd->add_option("-o,--out", out_path, "Output file");

  auto* describe_cmd = app.add_subcommand("describe", "Print the set description (JSON)");
  describe_cmd->add_option("input", input, "Set description file or builtin shorthand")->required();
  describe_cmd->add_option("-o,--out", out_path, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const SetModel model = load_set(input);
    if (expand_cmd->parsed()) {
      if (order < 0) throw UsageError("-K must be nonnegative");
      emit(out_path, expansion_to_json(expand(model, parse_direction(at), order)), out);
    } else if (eval_cmd->parsed()) {
      const std::vector<double> grid =
          !t_spec.empty() ? parse_grid(t_spec) : parse_grid(grid_spec.empty() ? "1" : grid_spec, points);
      std::string csv = method == "quad" ? "t,value,error\n" : "t,estimate,stderr\n";
      for (double t : grid) {
        double v = 0.0;
        double e = 0.0;
        if (method == "quad") {
          const PhiEstimate p = phi_quadrature(model, t, tol);
          v = p.value;
          e = p.error;
        } else {
          const McEstimate m = phi_montecarlo(model, t, samples, seed);
          v = m.estimate;
          e = m.std_error;
        }
        csv += format_double(t) + "," + format_double(v) + "," + format_double(e) + "\n";
      }
      emit(out_path, csv, out);
    } else if (verify_cmd->parsed()) {
      const Direction dir = parse_direction(at);
      if (grid_spec.empty()) grid_spec = dir == Direction::AtZero ? "1e-2..1e-6" : "1e2..1e6";
      // K counts in units of the germ; the result may be renormalized, so
      // grow K until the expansion reaches index N
      ExpansionResult r;
      if (verify_cmd->count("-K") > 0) {
        r = expand(model, dir, order);
      } else {
        for (int k = std::max(terms, 1);; k *= 2) {
          r = expand(model, dir, k);
          if (r.series.truncation_order() >= terms) break;
        }
      }
      const EvalReport rep = verify_remainder(model, r, terms, parse_grid(grid_spec, points), tol);
      emit(out_path, report_to_json(rep), out);
      if (!rep.pass) {
        err << "remainder check failed: " << rep.violations << " non-decreasing steps, decay " << rep.decay << "\n";
        return kVerifyFailed;
      }
    } else if (describe_cmd->parsed()) {
      emit(out_path, set_to_json(model), out);
    }
  } catch (const InsufficientData& e) {
    err << "insufficient data: " << e.what() << "\n";
    return kInsufficient;
  } catch (const AccuracyFailure& e) {
    err << "oracle failure: " << e.what() << " (partial " << e.partial_value() << ", error " << e.error_estimate()
        << ")\n";
    return kOracleFailure;
  } catch (const DivergentMoment& e) {
    err << "oracle failure: " << e.what() << "\n";
    return kOracleFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace gausstail::cli
