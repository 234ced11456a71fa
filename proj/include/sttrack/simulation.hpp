#pragma once

#include <cstdint>
#include <optional>

#include "sttrack/controllers.hpp"
#include "sttrack/geometry.hpp"
#include "sttrack/vehicle.hpp"

namespace sttrack {

struct SimulationConfig {
  double dt = 0.01;   // seconds per tick
  double eps = 0.01;  // classification tolerance handed to analysis
  std::uint64_t seed = 0;
  std::optional<double> v_start;         // default: first target sample speed
  std::optional<double> duration_cap_s;  // stop earlier than the target end
  double divergence_m = 20.0;            // |dq| abort threshold
};

void validate(const SimulationConfig& cfg);

struct SimResult {
  Trajectory tracked;
  int ticks = 0;
  double max_abs_dp = 0.0;
  double max_abs_dq = 0.0;
  int comp_episodes = 0;  // rising edges of |dp| > compensation threshold
};

// Closed-loop run: the vehicle starts on the first target point (speed
// per cfg.v_start) and is ticked with control_tick + step until the
// target end time. Throws DivergenceError when |dq| exceeds
// cfg.divergence_m.
SimResult run_simulation(const Trajectory& target, const VehicleParams& vehicle,
                         const ControlConfig& control, const SimulationConfig& cfg);

}  // namespace sttrack
