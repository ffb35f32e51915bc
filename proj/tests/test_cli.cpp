#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "arith_harmonics/cli.hpp"

using namespace ah;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

json load_schema() {
  std::ifstream in(AH_SCHEMA_PATH);
  REQUIRE(in.good());
  return json::parse(in);
}

// Checks the keys and enums the shipped schema declares; the full schema is
// validated with an external validator in a separate ctest entry.
void check_against_schema(const json& doc, const json& schema) {
  for (const auto& key : schema["required"]) REQUIRE(doc.contains(key.get<std::string>()));
  for (const auto& [key, _] : doc.items()) REQUIRE(schema["properties"].contains(key));
  const auto& summary_schema = schema["properties"]["summary"];
  for (const auto& key : summary_schema["required"]) REQUIRE(doc["summary"].contains(key.get<std::string>()));
  const auto& codes = summary_schema["properties"]["exit_code"]["enum"];
  REQUIRE(std::find(codes.begin(), codes.end(), doc["summary"]["exit_code"]) != codes.end());
  const auto& report_schema = schema["$defs"]["report"];
  const auto& scalar_schema = schema["$defs"]["scalar"];
  for (const auto& r : doc["reports"]) {
    for (const auto& key : report_schema["required"]) REQUIRE(r.contains(key.get<std::string>()));
    for (const auto& [key, _] : r.items()) REQUIRE(report_schema["properties"].contains(key));
    const auto& verdicts = report_schema["properties"]["verdict"]["enum"];
    REQUIRE(std::find(verdicts.begin(), verdicts.end(), r["verdict"]) != verdicts.end());
    for (const char* side : {"lhs", "rhs"})
      for (const auto& key : scalar_schema["required"]) REQUIRE(r[side].contains(key.get<std::string>()));
    REQUIRE(r["n_terms"].is_number_integer());
    for (const auto& [key, v] : r["params"].items()) REQUIRE((v.is_number() || v.is_string()));
  }
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sieve subcommand") {
  const auto mu = run({"sieve", "--kind", "mu", "--n-max", "10"});
  CHECK(mu.code == 0);
  const auto rows = data_lines(mu.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows.front() == "n,value");
  CHECK(rows.back() == "10,1");
  CHECK(mu.out.find("# kind=mu") != std::string::npos);

  const auto phi = run({"sieve", "--kind", "phi", "--n-max", "1"});
  CHECK(data_lines(phi.out).back() == "1,1");
  const auto jordan = run({"sieve", "--kind", "jordan", "--k", "2", "--n-max", "4"});
  CHECK(data_lines(jordan.out).back() == "4,12");
  const auto lambda = run({"sieve", "--kind", "mangoldt", "--n-max", "8"});
  CHECK(data_lines(lambda.out).back() == "8,0.69314718055994529");

  const auto js = run({"sieve", "--kind", "theta", "--n-max", "6", "--format", "json"});
  CHECK(js.code == 0);
  const auto doc = json::parse(js.out);
  CHECK(doc["rows"][5][1] == "4");

  CHECK(run({"sieve", "--kind", "bogus"}).code == 2);
  CHECK(run({"sieve", "--kind", "mu", "--n-max", "0"}).code == 2);
  CHECK(run({"sieve", "--kind", "mu", "--format", "xml"}).code == 2);
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "franel-sawtooth", "--r-max", "8"}).code == 0);
  CHECK(run({"verify", "besicovitch", "--k", "4", "--s", "2"}).code == 0);
  CHECK(run({"verify", "ramanujan-point", "--k", "5", "--s", "1", "--n-terms", "100000"}).code == 3);
  CHECK(run({"verify", "mu-tail-bound", "--d", "2310", "--tau", "1.01"}).code == 1);
  CHECK(run({"verify", "no-such-identity"}).code == 2);
  CHECK(run({"verify", "gram-det", "--tau", "2"}).code == 2);
  CHECK(run({"verify", "gram-det", "--n", "abc"}).code == 2);
  CHECK(run({"verify", "mikolas", "--s", "0.4"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("verify reports") {
  const auto gram = run({"verify", "gram-eigs", "--s", "2", "--n", "100"});
  CHECK(gram.code == 0);
  const auto doc = json::parse(gram.out);
  const auto& r = doc["reports"][0];
  CHECK(r["lhs"]["re"].get<double>() >= 0.4);
  CHECK(r["rhs"]["re"].get<double>() <= 2.5);
  CHECK(doc["config"]["s"] == "2");
  CHECK(doc["config"]["n"] == 100);

  const auto franel = run({"verify", "franel-sawtooth", "--r-max", "50"});
  CHECK(franel.code == 0);
  const auto fdoc = json::parse(franel.out);
  CHECK(fdoc["summary"]["total"] == 2500);
  CHECK(fdoc["summary"]["failed"] == 0);

  const auto csv = run({"verify", "smith-det", "--r", "2", "--n", "4", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("288") != std::string::npos);
  CHECK(csv.out.find("# identity=smith-det") != std::string::npos);
}

TEST_CASE("every registered identity runs with defaults and matches the schema") {
  const auto schema = load_schema();
  const auto names = registered_identities();
  CHECK(names.size() >= 20);
  for (const auto& name : names) {
    CAPTURE(name);
    const auto r = run({"verify", name});
    REQUIRE(r.code != 2);
    const auto doc = json::parse(r.out);
    check_against_schema(doc, schema);
    CHECK(doc["summary"]["exit_code"] == r.code);
    CHECK(doc["config"]["identity"] == name);
  }
}

TEST_CASE("determinism") {
  const std::vector<std::string> args{"verify", "biorth", "--seed", "7", "--n", "16"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);
  const auto c = run({"verify", "biorth", "--seed", "8", "--n", "16"});
  CHECK(c.out != a.out);
  CHECK(run({"verify", "t-semigroup", "--seed", "3"}).out == run({"verify", "t-semigroup", "--seed", "3"}).out);
}

TEST_CASE("figure subcommand") {
  const auto f1 = run({"figure", "fig1", "--n-terms", "2000", "--grid-points", "101"});
  CHECK(f1.code == 0);
  const auto rows = data_lines(f1.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "t,value");
  double m = 0.0;
  for (int n = 1; n <= 2000; ++n) {
    int mu = 1, x = n;
    for (int p = 2; p * p <= x; ++p)
      if (x % p == 0) {
        x /= p;
        if (x % p == 0) { mu = 0; break; }
        mu = -mu;
      }
    if (mu != 0 && x > 1) mu = -mu;
    m += mu / double(n);
  }
  const double at_zero = std::stod(rows[1].substr(rows[1].find(',') + 1));
  CHECK(std::abs(at_zero - m) <= 1e-12);
  int footers = 0;
  std::istringstream in(f1.out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("# root_sum", 0) == 0) {
      ++footers;
      CHECK(line.find("exact_match=1") != std::string::npos);
    }
  CHECK(footers == 9);
  CHECK(run({"figure", "fig1", "--n-terms", "2000", "--grid-points", "101"}).out == f1.out);
  CHECK(run({"figure", "fig2", "--n-terms", "1000", "--grid-points", "11"}).code == 0);
  CHECK(run({"figure", "fig3"}).code == 2);
  CHECK(run({"figure", "fig1", "--format", "json"}).code == 2);
}

TEST_CASE("scan subcommand") {
  const auto mu = run({"scan", "--kind", "mu", "--shifts", "0", "--m", "1000000"});
  CHECK(mu.code == 0);
  auto rows = data_lines(mu.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "M,S_over_M");
  CHECK(std::abs(std::stod(rows.back().substr(rows.back().find(',') + 1))) <= 0.005);

  const auto sq = run({"scan", "--kind", "mu", "--shifts", "0", "--exponents", "2", "--m", "100000"});
  CHECK(sq.out.find("# warning=") != std::string::npos);
  rows = data_lines(sq.out);
  CHECK(std::abs(std::stod(rows.back().substr(rows.back().find(',') + 1)) - 0.6079) <= 2e-3);

  const auto lam = run({"scan", "--kind", "lambda", "--shifts", "0,2", "--m", "100000", "--checkpoints", "6"});
  rows = data_lines(lam.out);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 2; i < rows.size(); ++i)
    CHECK(std::stoull(rows[i].substr(0, rows[i].find(','))) > std::stoull(rows[i - 1].substr(0, rows[i - 1].find(','))));
  CHECK(run({"scan", "--kind", "mu", "--shifts", "0,x"}).code == 2);
  CHECK(run({"scan", "--kind", "zeta"}).code == 2);
}

TEST_CASE("help lists the identities with formulas") {
  const auto h = run({"verify", "--help"});
  CHECK(h.code == 0);
  for (const auto& name : registered_identities()) CHECK(h.out.find(name) != std::string::npos);
  CHECK(h.out.find("gcd(r,s)^2/(12rs)") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"figure", "--help"}).code == 0);
  CHECK(run({"scan", "--help"}).out.find("sum_{m <= M}") != std::string::npos);
}

TEST_CASE("output file") {
  const std::string path = "cli_test_output.csv";
  const auto r = run({"sieve", "--kind", "omega", "--n-max", "12", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(data_lines(ss.str()).back() == "12,2");
  std::remove(path.c_str());
}

}  // TEST_SUITE
