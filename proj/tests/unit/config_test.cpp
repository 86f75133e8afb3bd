#include <doctest.h>

#include "restartar/config.hpp"

using namespace restartar;

namespace {

std::vector<std::string> config_messages(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.messages();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& m : v)
    if (m.find(s) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("full explicit model") {
  const auto cfg = parse_config(R"({
    "schema_version": 1, "seed": 5,
    "model": {"dimension": 1,
              "alpha": {"kind": "heavy-traffic", "a": 2},
              "beta": {"kind": "inv-sqrt-m"},
              "gamma": {"kind": "power", "c": 0.5, "exponent": -0.5},
              "noise": {"kind": "uniform-interval", "lo": -1, "hi": 1},
              "region": {"kind": "interval", "lo": -0.5, "hi": 0.5}},
    "run": {"m": 100, "samples": 1000, "mode": "long-run"},
    "output": {"path": "out", "format": "json"}})");
  REQUIRE(cfg.seed);
  CHECK(*cfg.seed == 5);
  REQUIRE(cfg.model);
  CHECK(cfg.model->drift == 2.0);
  CHECK(cfg.model->gamma.value(100) == doctest::Approx(0.05));
  CHECK(*cfg.run.m == 100);
  CHECK(*cfg.run.mode == "long-run");
  CHECK(cfg.output_format == "json");
  CHECK(*cfg.output_path == "out");
  CHECK_FALSE(cfg.echo().dump().find("\"out\"") != std::string::npos);
}

TEST_CASE("presets with overrides round-trip") {
  const auto cfg = parse_config(R"({"model": {"preset": "example-1.2", "gamma": {"kind": "scaled-inv-sqrt-m", "c": 0.25}}})");
  REQUIRE(cfg.model);
  CHECK_FALSE(cfg.seed);
  CHECK(cfg.model->region.outer_radius() == 1.0);
  CHECK(cfg.model->gamma.value(16) == doctest::Approx(0.0625));
  const auto again = parse_model(model_to_json(*cfg.model));
  CHECK(model_to_json(again) == model_to_json(*cfg.model));
}

TEST_CASE("errors are collected in one pass") {
  const auto msgs = config_messages(R"({"schema_version": 2, "seed": -1, "bogus": 1,
    "run": {"m": 0, "mode": "sideways"}})");
  CHECK(any_contains(msgs, "schema_version"));
  CHECK(any_contains(msgs, "seed"));
  CHECK(any_contains(msgs, "bogus: unknown key"));
  CHECK(any_contains(msgs, "run.m"));
  CHECK(any_contains(msgs, "run.mode"));
  CHECK(msgs.size() >= 5);
}

TEST_CASE("model field errors") {
  CHECK(any_contains(config_messages(R"({"model": {"preset": "example-1.1",
      "noise": {"kind": "finite-discrete", "points": [[-1], [1]], "probs": [0.5, 0.4]}}})"),
                     "probabilities must sum to 1"));
  CHECK(any_contains(config_messages(R"({"model": {"alpha": {"kind": "heavy-traffic", "a": 1}}})"), "noise"));
  CHECK(any_contains(config_messages(R"({"model": {"preset": "example-1.1", "dimension": 1,
      "noise": {"kind": "standard-gaussian", "dimension": 2}}})"),
                     "dimension"));
  CHECK(any_contains(config_messages(R"({"model": {"preset": "missing"}})"), "preset"));
  CHECK(any_contains(config_messages("{not json"), "JSON"));
}

TEST_CASE("limit section") {
  const auto cfg = parse_config(R"({"limit": {"a": 1, "sigma": [[1, 0], [0, 2]], "mu": [0.1, 0], "p": 0.9}})");
  REQUIRE(cfg.limit);
  CHECK(cfg.limit->sigma->rows() == 2);
  CHECK((*cfg.limit->sigma)(1, 1) == 2.0);
  CHECK((*cfg.limit->mu)[0] == 0.1);
}
