#include <doctest.h>

#include <json.hpp>

#include "restartar/commands.hpp"
#include "restartar/csv.hpp"

using namespace restartar;

namespace {

CommandArgs seeded(std::uint64_t seed) {
  CommandArgs a;
  a.seed = seed;
  return a;
}

}  // namespace

TEST_CASE("csv formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e300) == "1e+300");
  CHECK(format_number(-2.0) == "-2");
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CsvTable t({"name", "x", "n"});
  t.add_row({std::string("a,b"), 0.5, std::int64_t{3}});
  CHECK(t.str() == "name,x,n\n\"a,b\",0.5,3\n");
  CHECK_THROWS(t.add_row({0.5}));
}

TEST_CASE("seed is required") {
  const auto r = run_command("limit-cf", {}, std::string(R"({"limit": {"a": 1, "sigma": [[1]]}})"));
  CHECK(r.exit_code == kExitConfig);
  REQUIRE_FALSE(r.errors.empty());
  CHECK(r.errors[0].find("seed required") != std::string::npos);
}

TEST_CASE("infeasible limit law is a runtime failure") {
  const auto r = run_command("limit-pdf", seeded(1), std::string(R"({"limit": {"a": 1, "sigma": [[1]], "mu": [0.6]}})"));
  CHECK(r.exit_code == kExitRuntime);
  REQUIRE_FALSE(r.errors.empty());
  CHECK(r.errors[0].find("feasibility ratio") != std::string::npos);
  CHECK(r.report.empty());
}

TEST_CASE("limit-cf report and table") {
  const auto r = run_command("limit-cf", seeded(1),
                             std::string(R"({"limit": {"a": 0.5, "sigma": [[1]]}, "options": {"points": [[1]]}})"));
  REQUIRE(r.exit_code == kExitOk);
  const auto report = nlohmann::json::parse(r.report);
  CHECK(report.at("schema_version") == 1);
  CHECK(report.at("command") == "limit-cf");
  CHECK(report.at("seed") == 1);
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].first == "cf.csv");
  CHECK(r.tables[0].second.find("0.6065306597126") != std::string::npos);
}

TEST_CASE("unknown subcommand and bad config") {
  CHECK(run_command("frobnicate", seeded(1), std::nullopt).exit_code == kExitConfig);
  CHECK(run_command("limit-cf", seeded(1), std::string("{\"extra\": 1}")).exit_code == kExitConfig);
}

TEST_CASE("outputs are a pure function of seed and config") {
  CommandArgs a = seeded(3);
  a.preset = "example-1.1";
  a.m = 50;
  a.samples = 2000;
  const auto r1 = run_command("stationary", a, std::nullopt);
  a.threads = 4;
  const auto r2 = run_command("stationary", a, std::nullopt);
  REQUIRE(r1.exit_code == kExitOk);
  CHECK(r1.report == r2.report);
  CHECK(r1.tables == r2.tables);
  a.seed = 4;
  CHECK(run_command("stationary", a, std::nullopt).tables != r1.tables);
}

TEST_CASE("validate") {
  CommandArgs a = seeded(1);
  a.preset = "example-2";
  a.m = 100;
  const auto r = run_command("validate", a, std::nullopt);
  CHECK(r.exit_code == kExitOk);
  const auto report = nlohmann::json::parse(r.report);
  CHECK(report.at("result").at("validations").at(0).at("pass") == true);
  a.preset.reset();
  const auto bad = run_command("validate", a,
                               std::string(R"({"model": {"preset": "example-1.1", "alpha": {"kind": "finite-discrete",
                                 "values": [0.4], "probs": [1]}, "drift": 0.6}})"));
  CHECK(bad.exit_code == kExitRuntime);
  CHECK_FALSE(bad.errors.empty());
}
