#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "../tools/cli_config.hpp"

using namespace ricecli;
using nlohmann::json;

TEST_CASE("minimal config gets documented defaults") {
  ExperimentConfig c = parse_config(json::object());
  CHECK(c.h1 == 100.0);
  CHECK(c.h2 == 100.0);
  CHECK(c.k == 0.05);
  CHECK(c.model.kind == "gaussian");
  CHECK(c.replicates == 200);
  CHECK_FALSE(c.has_sigma);
}

TEST_CASE("validation errors name the offending key") {
  auto expect_mentions = [](const json& j, const std::string& key) {
    try {
      parse_config(j);
      FAIL("expected ConfigError for key " << key);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(key) != std::string::npos);
    }
  };
  expect_mentions({{"h1", -5.0}}, "h1");
  expect_mentions({{"h2", 0.0}}, "h2");
  expect_mentions({{"k", "fast"}}, "k");
  expect_mentions({{"gamma", 1.5}}, "gamma");
  expect_mentions({{"replicates", 0}}, "replicates");
  expect_mentions({{"model", {{"kind", "white_noise"}}}}, "model.kind");
  expect_mentions({{"sigma", {1.0, 2.0}}}, "sigma");
  // asymmetric sigma rejected
  expect_mentions(
      {{"sigma", {{1.0, 0.2, 0.0}, {0.3, 1.0, 0.0}, {0.0, 0.0, 1.0}}}},
      "sigma");
}

TEST_CASE("round-trip: resolved config re-parses identically") {
  json j = {{"command", "sp1d-exact"},
            {"h1", 90.0},
            {"h2", 110.0},
            {"model", {{"kind", "moments"}, {"lambda2", 1.0}, {"lambda4", 3.0}}},
            {"sigma", {{9e-4, 3e-4, 0.0}, {3e-4, 1.1e-3, 0.0}, {0.0, 0.0, 3e-4}}},
            {"seed", 99},
            {"replicates", 77}};
  ExperimentConfig c1 = parse_config(j);
  json out1 = to_json(c1);
  ExperimentConfig c2 = parse_config(out1);
  json out2 = to_json(c2);
  CHECK(out1.dump() == out2.dump());
  CHECK(c2.h1 == 90.0);
  CHECK(c2.seed == 99);
  CHECK(c2.has_sigma);
  CHECK(c2.sigma[1][1] == 1.1e-3);
}

TEST_CASE("file loading") {
  std::string path = "cli_config_test_tmp.json";
  {
    std::ofstream f(path);
    f << R"({"h1": 50, "model": {"kind": "compact_bump", "delta": 2.0,
             "exponent": 5}})";
  }
  ExperimentConfig c = load_config(path);
  CHECK(c.h1 == 50.0);
  CHECK(c.model.kind == "compact_bump");
  CHECK(c.model.build().support_radius() > 0.0);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_config("does_not_exist.json"), ConfigError);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("moments-only model has no covariance realization") {
  ExperimentConfig c = parse_config(
      {{"model", {{"kind", "moments"}, {"lambda2", 1.0}, {"lambda4", 3.0}}}});
  CHECK_THROWS_AS(c.model.build(), ConfigError);
}
