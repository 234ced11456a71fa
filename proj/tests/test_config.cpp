#include <doctest.h>

#include <nlohmann/json.hpp>

#include "sttrack/config.hpp"
#include "sttrack/errors.hpp"

using namespace sttrack;
using nlohmann::json;

TEST_CASE("default config carries the reference comparison bands") {
  RunConfig cfg = default_run_config();
  REQUIRE(cfg.analysis.bands.count("speed") == 1);
  CHECK(cfg.analysis.bands["speed"].lo == -0.1);
  CHECK(cfg.analysis.bands["speed"].hi == 0.5);
  CHECK(cfg.compensation.threshold == 0.5);
  CHECK(cfg.compensation.window == 1.0);
  CHECK(config_hash(cfg).size() == 16);
}

TEST_CASE("parse: unknown keys are rejected with their path") {
  json doc = {{"simulation", {{"dt", 0.01}, {"foo", 1}}}};
  CHECK_THROWS_WITH_AS(parse_run_config(doc), doctest::Contains("simulation.foo"), ConfigError);

  json top = {{"unknown_section", json::object()}};
  CHECK_THROWS_WITH_AS(parse_run_config(top), doctest::Contains("unknown_section"), ConfigError);
}

TEST_CASE("parse: values validated per module") {
  CHECK_THROWS_AS(parse_run_config({{"compensation", {{"threshold_m", -1.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config({{"vehicle", {{"wheelbase", 0.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config({{"speed_profile", {{"noise_fraction", 0.9}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config({{"lqr", {{"q_diag", {1.0, 2.0}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config({{"analysis", {{"bands", {{"speed", {0.5, -0.1}}}}}}}),
                  ConfigError);
}

TEST_CASE("parse: alignment wants exactly one source") {
  json both = {{"alignment",
                {{"centerline", "foo.csv"},
                 {"segments", {{{"kind", "straight"}, {"length", 10.0}}}}}}};
  CHECK_THROWS_WITH_AS(parse_run_config(both), doctest::Contains("not both"), ConfigError);

  json segs = {{"alignment", {{"segments", {{{"kind", "arc"}, {"length", 10.0}, {"radius", 100.0},
                                             {"direction", "right"}}}}}}};
  RunConfig cfg = parse_run_config(segs);
  REQUIRE(cfg.alignment.spec);
  CHECK(cfg.alignment.spec->segments[0].kind == SegmentKind::Arc);
  CHECK(cfg.alignment.spec->segments[0].direction == TurnDirection::Right);
}

TEST_CASE("parse/serialize round-trip is stable") {
  json doc = {{"speed_profile", {{"v_desired", 22.0}, {"seed", 99}}},
              {"pid", {{"inner", {{"kp", 2.0}}}}},
              {"compensation", {{"window_s", 1.5}, {"enabled", false}}},
              {"simulation", {{"dt", 0.02}, {"v_start", 3.0}}},
              {"analysis", {{"bands", json::object()}}}};
  RunConfig cfg = parse_run_config(doc);
  CHECK(cfg.speed_profile.v_desired == 22.0);
  CHECK(cfg.speed_profile.seed == 99);
  CHECK(cfg.pid.inner.kp == 2.0);
  CHECK(cfg.pid.inner.ki == 0.1);  // untouched default
  CHECK(cfg.compensation.window == 1.5);
  CHECK(!cfg.compensation_enabled);
  REQUIRE(cfg.simulation.v_start);
  CHECK(*cfg.simulation.v_start == 3.0);
  CHECK(cfg.analysis.bands.empty());

  RunConfig again = parse_run_config(to_json(cfg));
  CHECK(to_json(again).dump() == to_json(cfg).dump());
  CHECK(config_hash(again) == config_hash(cfg));
}

TEST_CASE("hash changes when any key changes") {
  RunConfig a = default_run_config();
  RunConfig b = a;
  b.simulation.seed = 1;
  CHECK(config_hash(a) != config_hash(b));
}
