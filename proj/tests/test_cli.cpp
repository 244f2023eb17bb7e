#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "bamboo/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Outcome outcome;
  outcome.code = bamboo::cli::run(args, in, out, err);
  outcome.out = out.str();
  outcome.err = err.str();
  return outcome;
}

const std::string kExample = R"({"rates": ["4", "3", "0.1"]})";

}  // namespace

TEST_CASE("cli solve") {
  const auto result = run({"solve"}, kExample);
  REQUIRE(result.code == 0);
  const auto doc = result.doc();
  CHECK(doc["bound"] == "96/7");
  CHECK(doc["max_height"] == "64/5");
  CHECK(doc["lower_bound"] == "8");
  REQUIRE(doc["entries"].size() == 3);
  CHECK(doc["entries"][0]["offset"] == 2);
  CHECK(doc["entries"][2]["cycle"] == 128);
  CHECK_FALSE(doc.contains("trace"));
}

TEST_CASE("cli solve keeps input order in job ids") {
  const auto doc = run({"solve"}, R"({"rates": ["0.1", "4", "3"]})").doc();
  CHECK(doc["entries"][0]["job"] == 0);
  CHECK(doc["entries"][0]["cycle"] == 128);
  CHECK(doc["entries"][1]["cycle"] == 2);
}

TEST_CASE("cli explain shows the pipeline") {
  const auto result = run({"explain"}, kExample);
  REQUIRE(result.code == 0);
  const auto doc = result.doc();
  const auto& trace = doc.contains("trace") ? doc["trace"] : doc;
  CHECK(trace["case"] == "b");
  CHECK(trace["y"] == "5/6");
  CHECK(trace["density"] == "497/960");
}

TEST_CASE("cli solve then verify round-trips") {
  const auto solved = run({"solve"}, kExample);
  REQUIRE(solved.code == 0);
  const auto verified = run({"verify", "--input", "-"}, solved.out);
  CHECK(verified.code == 0);
  CHECK(verified.doc()["ok"] == true);
}

TEST_CASE("cli verify rejects a tampered schedule") {
  auto doc = run({"solve"}, kExample).doc();
  doc["entries"][1]["offset"] = 2;
  const auto verified = run({"verify", "--input", "-"}, doc.dump());
  CHECK(verified.code == 1);
  const auto report = verified.doc();
  CHECK(report["ok"] == false);
  CHECK(report["collisions"].size() == 1);
  CHECK(report["collisions"][0]["day"] == 2);
}

TEST_CASE("cli verify flags windows beyond the bound") {
  auto doc = run({"solve"}, kExample).doc();
  doc["entries"][0]["cycle"] = 4;
  doc["entries"][0]["offset"] = 4;
  const auto verified = run({"verify", "--input", "-"}, doc.dump());
  CHECK(verified.code == 1);
  CHECK(verified.doc()["windows_ok"] == false);
}

TEST_CASE("cli oracle commands") {
  const auto infeasible = run({"oracle", "pinwheel", "2", "3", "12"});
  REQUIRE(infeasible.code == 0);
  CHECK(infeasible.doc()["feasible"] == false);

  const auto feasible = run({"oracle", "pinwheel", "2", "4", "4"});
  CHECK(feasible.doc()["feasible"] == true);
  CHECK(feasible.doc()["witness"].size() == 4);

  const auto opt = run({"oracle", "bgt-opt"}, R"({"rates": [1, 1]})");
  REQUIRE(opt.code == 0);
  CHECK(opt.out.find("\"2\"") != std::string::npos);

  const auto tight = run({"oracle", "tightness"});
  REQUIRE(tight.code == 0);
  CHECK(tight.doc()["rounding_gap"]["rounded_feasible"] == false);
  CHECK(tight.doc()["factor_gap"]["gamma_in_range"] == true);

  const auto off_range = run({"oracle", "tightness", "--gamma", "1"});
  REQUIRE(off_range.code == 0);
  CHECK(off_range.doc()["factor_gap"]["gamma_in_range"] == false);
  CHECK(off_range.doc()["factor_gap"].contains("note"));
}

TEST_CASE("cli density") {
  CHECK(run({"density", "2", "3", "12"}).doc()["density"] == "11/12");
  CHECK(run({"density", "24/7", "32/7", "960/7"}).doc()["density"] == "497/960");
  CHECK(run({"density", "--input", "-"}, R"({"periods": ["2", "4"]})").doc()["density"] == "3/4");
}

TEST_CASE("cli bench") {
  const auto result = run({"bench", "--seeds", "20", "--n", "3", "--max-rate", "10", "--oracle"});
  REQUIRE(result.code == 0);
  const auto doc = result.doc();
  CHECK(doc["guarantee_failures"] == 0);
  CHECK(doc["vs_lower_bound"]["count"] == 20);
  CHECK(doc["vs_opt"]["count"].get<int>() + doc["vs_opt"]["skipped"].get<int>() == 20);

  // Same seed, same report.
  CHECK(run({"bench", "--seeds", "5", "--seed", "9"}).out == run({"bench", "--seeds", "5", "--seed", "9"}).out);
}

TEST_CASE("cli input errors exit 2") {
  const auto below_two = run({"solve", "--lower-bound", "sum"}, R"({"rates": [13, 1]})");
  CHECK(below_two.code == 2);
  CHECK(below_two.doc()["error"] == "PeriodBelowTwo");
  CHECK(below_two.doc()["hint"] == "use --lower-bound max-rule");

  CHECK(run({"solve", "--bogus"}, kExample).code == 2);
  CHECK(run({"solve"}, R"({"rates": )").code == 2);
  CHECK(run({"solve"}, R"({"rates": [1.5]})").code == 2);
  CHECK(run({"solve"}, R"({"rates": []})").code == 2);
  CHECK(run({"solve"}, R"({"rates": ["-1"]})").code == 2);
  CHECK(run({"solve", "/nonexistent/instance.json"}).code == 2);
  CHECK(run({"oracle", "pinwheel", "0"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("cli help exits 0") {
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
}
