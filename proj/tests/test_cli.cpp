#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gausstail/cli.hpp"
#include "gausstail/io.hpp"
#include "gausstail/setmodel.hpp"
#include "json.hpp"

using gausstail::cli::run;

namespace {
struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gausstail_test_" + name);
}
}  // namespace

TEST_SUITE("cli") {

TEST_CASE("expand examples") {
  const Outcome a = call({"expand", "ex39", "--at", "zero", "-K", "4"});
  REQUIRE(a.code == gausstail::cli::kOk);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["series"]["direction"] == "zero");
  CHECK(doc["series"]["p"] == 1);
  const double c = std::sqrt(2.0) / std::pow(M_PI, 1.5);
  bool found = false;
  for (const auto& term : doc["series"]["terms"]) {
    const gausstail::Rational e = gausstail::Rational(term["k"].get<int>(), doc["series"]["q"].get<int>());
    if (e == gausstail::Rational(1, 2)) {
      found = true;
      CHECK(term["coeffs"][1].get<double>() == doctest::Approx(-c / 4).epsilon(1e-12));
    }
  }
  CHECK(found);
  CHECK(!doc["provenance"].empty());

  const Outcome b = call({"expand", "full:n=3", "--at", "zero", "-K", "2"});
  REQUIRE(b.code == 0);
  const auto full = nlohmann::json::parse(b.out);
  for (const auto& term : full["series"]["terms"]) {
    const double v = term["coeffs"][0].get<double>();
    if (term["k"] == 0) {
      CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    } else {
      CHECK(std::abs(v) < 1e-10);
    }
  }

  const Outcome d = call({"expand", "ex34", "--at", "infinity", "-K", "4"});
  REQUIRE(d.code == 0);
  const auto e34 = nlohmann::json::parse(d.out);
  CHECK(e34["series"]["terms"][0]["coeffs"][1].get<double>() == doctest::Approx(0.0795775).epsilon(1e-6));
}

TEST_CASE("eval examples") {
  const Outcome a = call({"eval", "ball:n=2,R=1", "--t", "0.5", "--method", "quad"});
  REQUIRE(a.code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "t,value,error");
  const auto f = csv_fields(rows[1]);
  CHECK(std::stod(f[0]) == 0.5);
  CHECK(std::stod(f[1]) == doctest::Approx(0.63212056).epsilon(1e-8));
  CHECK(std::stod(f[2]) <= 1e-10);

  const Outcome b = call({"eval", "full:n=2", "--t", "1"});
  REQUIRE(b.code == 0);
  CHECK(lines(b.out)[1].rfind("1,", 0) == 0);

  const Outcome c = call({"eval", "halfspace:n=2", "--t", "1", "--method", "mc", "--seed", "7"});
  REQUIRE(c.code == 0);
  const auto mc = lines(c.out);
  CHECK(mc[0] == "t,estimate,stderr");
  const auto g = csv_fields(mc[1]);
  CHECK(std::abs(std::stod(g[1]) - 0.5) <= 4 * std::stod(g[2]));

  const Outcome d = call({"eval", "ball:n=3,R=1", "--grid", "1e-2..1e2", "--points", "5"});
  REQUIRE(d.code == 0);
  CHECK(lines(d.out).size() == 6);
}

TEST_CASE("verify examples") {
  const Outcome a = call({"verify", "ex39", "--at", "zero", "-N", "1", "--grid", "1e-2..1e-6"});
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["pass"] == true);
  CHECK(call({"verify", "ex34", "--at", "zero", "-N", "5"}).code == 0);
  const Outcome c = call({"verify", "ex34", "--at", "infinity", "-N", "2", "--grid", "1e2..1e6"});
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["rows"].size() == 5);
}

TEST_CASE("files as input and output") {
  const auto in = temp_file("set.json");
  const auto out = temp_file("expansion.json");
  {
    std::ofstream f(in);
    f << gausstail::set_to_json(gausstail::builtin("ex39"));
  }
  const Outcome a = call({"expand", in.string(), "--at", "zero", "-K", "2", "-o", out.string()});
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == call({"expand", "ex39", "--at", "zero", "-K", "2"}).out);

  const Outcome d = call({"describe", in.string()});
  CHECK(d.code == 0);
  CHECK(d.out == gausstail::set_to_json(gausstail::builtin("ex39")));
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == gausstail::cli::kUsage);
  CHECK(call({"--help"}).code == gausstail::cli::kOk);
  CHECK(call({"frobnicate"}).code == gausstail::cli::kUsage);
  const Outcome unknown = call({"eval", "nosuchset", "--t", "1"});
  CHECK(unknown.code == gausstail::cli::kUsage);
  CHECK(unknown.out.empty());
  CHECK(!unknown.err.empty());

  const auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << "{ not json";
  }
  CHECK(call({"expand", bad.string(), "-K", "2"}).code == gausstail::cli::kUsage);
  std::filesystem::remove(bad);

  CHECK(call({"expand", "ex38", "--at", "zero", "-K", "100000"}).code == gausstail::cli::kInsufficient);
  CHECK(call({"expand", "ex38", "--at", "zero", "-K", "-1"}).code == gausstail::cli::kUsage);
  CHECK(call({"eval", "ball:n=2,R=1", "--t", "1", "--method", "mc", "--samples", "10"}).code == gausstail::cli::kUsage);
  CHECK(call({"eval", "ball:n=2,R=1", "--t", "1", "--tol", "1e-30"}).code == gausstail::cli::kOracleFailure);

}

TEST_CASE("grid parsing") {
  using gausstail::cli::parse_grid;
  const auto a = parse_grid("1e-2..1e-6");
  REQUIRE(a.size() == 5);
  CHECK(a.front() == doctest::Approx(1e-2));
  CHECK(a.back() == doctest::Approx(1e-6));
  CHECK(parse_grid("1..100", 3)[1] == doctest::Approx(10.0));
  CHECK(parse_grid("0.5,2,3").size() == 3);
  CHECK(parse_grid("7").size() == 1);
  CHECK_THROWS(parse_grid("a..b"));
  CHECK_THROWS(parse_grid("-1..2"));
}

}
