#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "sttrack/errors.hpp"
#include "sttrack/simulation.hpp"
#include "sttrack/target_generator.hpp"
#include "sttrack/trajectory_io.hpp"

using namespace sttrack;
namespace fs = std::filesystem;

namespace {
Trajectory constant_speed_straight(double v, double length) {
  AlignmentSpec spec;
  spec.segments = {{SegmentKind::Straight, length}};
  auto pts = synth_alignment(spec, 1.0);
  return to_trajectory(pts, std::vector<double>(pts.size(), v));
}

Trajectory golden_target() {
  AlignmentSpec spec;
  spec.segments = {{SegmentKind::Straight, 150.0},
                   {SegmentKind::Arc, 100.0, 200.0, TurnDirection::Left}};
  auto pts = synth_alignment(spec, 1.0);
  SpeedProfileConfig cfg;
  cfg.v_desired = 15.0;
  cfg.v_start = 15.0;
  cfg.v_end = 15.0;
  cfg.noise_fraction = 0.02;
  cfg.seed = 7;
  auto profile = apply_speed_noise(build_speed_profile(pts, cfg), cfg);
  return to_trajectory(pts, profile);
}
}  // namespace

TEST_CASE("run_simulation: perfect start on a straight keeps |dq| under 5 cm") {
  Trajectory target = constant_speed_straight(15.0, 300.0);
  SimResult result = run_simulation(target, VehicleParams{}, ControlConfig{}, SimulationConfig{});
  CHECK(result.max_abs_dq <= 0.05);
  CHECK(result.max_abs_dp <= 0.5);
  CHECK(result.ticks > 1000);
}

TEST_CASE("run_simulation: v_start default is the first target speed") {
  Trajectory target = constant_speed_straight(12.0, 100.0);
  SimulationConfig cfg;
  SimResult by_default = run_simulation(target, VehicleParams{}, ControlConfig{}, cfg);
  CHECK(by_default.tracked.points.front().v == 12.0);

  cfg.v_start = 10.0;
  SimResult explicit_start = run_simulation(target, VehicleParams{}, ControlConfig{}, cfg);
  CHECK(explicit_start.tracked.points.front().v == 10.0);
}

TEST_CASE("run_simulation: duration cap stops early") {
  Trajectory target = constant_speed_straight(10.0, 200.0);
  SimulationConfig cfg;
  cfg.duration_cap_s = 2.0;
  SimResult result = run_simulation(target, VehicleParams{}, ControlConfig{}, cfg);
  CHECK(result.ticks == 200);
  CHECK(result.tracked.end_time() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("run_simulation: divergence guard aborts with diagnostics") {
  AlignmentSpec spec;
  spec.segments = {{SegmentKind::Arc, 150.0, 80.0, TurnDirection::Left}};
  auto pts = synth_alignment(spec, 1.0);
  Trajectory target = to_trajectory(pts, std::vector<double>(pts.size(), 12.0));
  SimulationConfig cfg;
  cfg.divergence_m = 1e-7;  // any curve-tracking transient exceeds this
  CHECK_THROWS_WITH_AS(run_simulation(target, VehicleParams{}, ControlConfig{}, cfg),
                       doctest::Contains("diverged"), DivergenceError);
}

TEST_CASE("run_simulation: golden-run regression") {
  Trajectory target = golden_target();
  SimulationConfig sim;
  sim.duration_cap_s = 3.0;
  SimResult result = run_simulation(target, VehicleParams{}, ControlConfig{}, sim);

  fs::path golden = fs::path(STTRACK_TEST_DATA_DIR) / "golden_straight_arc.csv";
  if (std::getenv("STTRACK_REGEN_GOLDEN")) {
    save_trajectory_csv(result.tracked, golden.string());
    MESSAGE("regenerated ", golden.string());
    return;
  }
  REQUIRE_MESSAGE(fs::exists(golden),
                  "golden file missing; run with STTRACK_REGEN_GOLDEN=1 to create it");
  Trajectory expected = load_trajectory_csv(golden.string());
  REQUIRE(result.tracked.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(result.tracked.points[i].t == expected.points[i].t);
    CHECK(result.tracked.points[i].x == expected.points[i].x);
    CHECK(result.tracked.points[i].y == expected.points[i].y);
    CHECK(result.tracked.points[i].v == expected.points[i].v);
    CHECK(result.tracked.points[i].heading == expected.points[i].heading);
  }
}
