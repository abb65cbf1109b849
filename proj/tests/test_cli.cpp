#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lukas/cli.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args, const std::string& input = {}) {
  std::vector<const char*> argv{"lukas"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  std::istringstream in(input);
  std::streambuf* old = std::cin.rdbuf(in.rdbuf());
  int code = lukas::cli::run(int(argv.size()), argv.data(), out, err);
  std::cin.rdbuf(old);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count subcommand") {
  RunResult r = run({"count", "--steps", "-1,1", "--kind", "excursion", "-n", "6"});
  REQUIRE(r.code == 0);
  json envelope = json::parse(r.out);
  CHECK(envelope["steps"] == "-1,1");
  CHECK(envelope["payload"]["count"]["value"] == "5");
  CHECK(envelope["payload"]["count"]["type"] == "integer");
}

TEST_CASE("dist CSV rows") {
  RunResult r = run({"dist", "--steps", "-1,1", "--kind", "excursion", "-n", "6",
                     "-r", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "k,count\n0,1\n1,3\n2,0\n3,1\n");
}

TEST_CASE("moments renders exact rationals") {
  RunResult r = run({"moments", "--steps", "-1,1", "--kind", "excursion", "-n",
                     "6", "-r", "1"});
  REQUIRE(r.code == 0);
  json payload = json::parse(r.out)["payload"];
  CHECK(payload["mean"]["num"] == "6");
  CHECK(payload["mean"]["den"] == "5");
  CHECK(payload["variance"]["num"] == "24");
  CHECK(payload["variance"]["den"] == "25");
}

TEST_CASE("constants with explicit digits") {
  RunResult r = run({"constants", "--steps", "-1,2", "--digits", "30"});
  REQUIRE(r.code == 0);
  json envelope = json::parse(r.out);
  CHECK(envelope["digits"] == 30);
  std::string tau = envelope["payload"]["tau"]["value"];
  CHECK(tau.substr(0, 14) == "0.793700525984");
  std::string rho = envelope["payload"]["rho"]["value"];
  CHECK(rho.substr(0, 14) == "0.529133683989");
  CHECK(envelope["payload"]["c"]["value"] == "1.5");
  CHECK(envelope["payload"]["period"] == 3);
}

TEST_CASE("LUKAS_DIGITS overrides the default precision") {
  setenv("LUKAS_DIGITS", "25", 1);
  RunResult r = run({"constants", "--steps", "-1,2"});
  unsetenv("LUKAS_DIGITS");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["digits"] == 25);
  RunResult fallback = run({"constants", "--steps", "-1,2"});
  CHECK(json::parse(fallback.out)["digits"] == 50);
}

TEST_CASE("huge exact integers are rendered in full") {
  RunResult r = run({"count", "--steps", "-1,0,1,2,3", "--kind", "meander",
                     "-n", "120", "--format", "csv"});
  REQUIRE(r.code == 0);
  auto pos = r.out.find("count,");
  REQUIRE(pos != std::string::npos);
  std::string digits = r.out.substr(pos + 6);
  CHECK(digits.size() > 80);  // ~5^120 paths; floats would have lost this
  CHECK(digits.find('e') == std::string::npos);
  CHECK(digits.find('.') == std::string::npos);
}

TEST_CASE("JSON envelope round-trips idempotently") {
  RunResult r = run({"moments", "--steps", "-1,2", "--kind", "meander", "-n",
                     "40", "-r", "2"});
  REQUIRE(r.code == 0);
  json first = json::parse(r.out);
  std::string dumped = first.dump(2);
  json second = json::parse(dumped);
  CHECK(first == second);
  CHECK(dumped == second.dump(2));
}

TEST_CASE("series subcommand lists nonzero coefficients") {
  RunResult r = run({"series", "--steps", "-1,2", "--kind", "dispersed", "-n",
                     "4", "-r", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "n,k,coefficient\n0,0,1\n1,0,1\n2,0,1\n3,0,1\n3,1,1\n4,0,1\n4,1,2\n");
}

TEST_CASE("asym subcommand evaluates formulas") {
  RunResult r = run({"asym", "--steps", "-1,2", "--kind", "excursion", "--stat",
                     "mean", "-n", "300", "-r", "1"});
  REQUIRE(r.code == 0);
  json payload = json::parse(r.out)["payload"];
  double v = std::stod(payload["value"]["value"].get<std::string>());
  CHECK(v == doctest::Approx(300.0 * 4 / 27 + 10.0 / 27).epsilon(1e-9));
}

TEST_CASE("compare subcommand emits rows and a fitted exponent") {
  RunResult r = run({"compare", "--steps", "-1,2", "--kind", "excursion", "-r",
                     "1", "--lengths", "30,60,120", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,exact,asymptotic,residual,fitted_exponent\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

TEST_CASE("sample subcommand is deterministic") {
  RunResult a = run({"sample", "--steps", "-1,2", "--kind", "excursion", "-n",
                     "30", "--seed", "5"});
  RunResult b = run({"sample", "--steps", "-1,2", "--kind", "excursion", "-n",
                     "30", "--seed", "5"});
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["payload"]["path"] ==
        json::parse(b.out)["payload"]["path"]);
}

TEST_CASE("tree subcommand converts both directions") {
  RunResult to_tree = run({"tree", "--steps", "-1,1", "--to", "tree", "-r", "2"},
                          "1,1,-1,-1\n");
  REQUIRE(to_tree.code == 0);
  json payload = json::parse(to_tree.out)["payload"];
  CHECK(payload["tree"] == "((()())())");
  CHECK(payload["ascents"] == 1);

  RunResult to_path = run({"tree", "--steps", "-1,1", "--to", "path"},
                          "((()())())");
  REQUIRE(to_path.code == 0);
  CHECK(json::parse(to_path.out)["payload"]["path"] == "1,1,-1,-1");
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run({"count", "--steps", "-1,0", "--kind", "excursion", "-n", "3"}).code == 2);
  CHECK(run({"tree", "--steps", "-1,1", "--to", "tree"}, "1,up,-1\n").code == 2);
  CHECK(run({"compare", "--steps", "-1,1", "--kind", "excursion", "-r", "1",
             "--lengths", "4,x"}).code == 2);
  CHECK(run({"count", "--steps", "-1,0,1", "--kind", "dispersed", "-n", "3"}).code == 2);
  CHECK(run({"moments", "--steps", "-1,1", "--kind", "excursion", "-n", "7",
             "-r", "1"}).code == 2);
  CHECK(run({"definitely-not-a-subcommand"}).code == 2);
  CHECK(run({"count", "--steps", "-1,1", "--kind", "zigzag", "-n", "3"}).code == 2);
}

TEST_CASE("errors are reported on the error stream") {
  RunResult r = run({"count", "--steps", "-1,0", "--kind", "excursion", "-n", "3"});
  CHECK(r.out.empty());
  CHECK(r.err.find("-1,0") != std::string::npos);
}
