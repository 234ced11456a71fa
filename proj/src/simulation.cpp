#include "sttrack/simulation.hpp"

#include <cmath>
#include <sstream>

#include "sttrack/errors.hpp"

namespace sttrack {

void validate(const SimulationConfig& cfg) {
  if (!(cfg.dt > 0.0) || cfg.dt > 0.1)
    throw ConfigError("simulation.dt must be in (0, 0.1]");
  if (!(cfg.eps >= 0.0)) throw ConfigError("simulation.eps must be >= 0");
  if (cfg.v_start && *cfg.v_start < 0.0) throw ConfigError("simulation.v_start must be >= 0");
  if (cfg.duration_cap_s && !(*cfg.duration_cap_s > 0.0))
    throw ConfigError("simulation.duration_cap_s must be > 0");
  if (!(cfg.divergence_m > 0.0)) throw ConfigError("simulation.divergence_m must be > 0");
}

SimResult run_simulation(const Trajectory& target, const VehicleParams& vehicle,
                         const ControlConfig& control, const SimulationConfig& cfg) {
  validate(cfg);
  validate(vehicle);
  validate(control.lqr);
  validate(control.pid);
  validate(control.comp);

  const TrajectoryPoint& first = target.points.front();
  VehicleState state{first.x, first.y, first.heading, cfg.v_start.value_or(first.v)};

  double t0 = target.start_time();
  double t_end = target.end_time();
  if (cfg.duration_cap_s) t_end = std::min(t_end, t0 + *cfg.duration_cap_s);

  SimResult result;
  result.tracked.points.push_back({t0, state.x, state.y, state.v, state.heading});

  ControllerState cs;
  bool in_episode = false;
  double t = t0;
  while (t + cfg.dt <= t_end + 1e-9) {
    TickDebug dbg;
    ControlInput input = control_tick(target, state, t, control, vehicle, cs, &dbg);

    result.max_abs_dp = std::max(result.max_abs_dp, std::abs(dbg.dp));
    result.max_abs_dq = std::max(result.max_abs_dq, std::abs(dbg.dq));
    bool outside = std::abs(dbg.dp) > control.comp.threshold;
    if (outside && !in_episode) ++result.comp_episodes;
    in_episode = outside;

    if (std::abs(dbg.dq) > cfg.divergence_m) {
      std::ostringstream msg;
      msg << "controller diverged at t=" << t << ": |dq|=" << std::abs(dbg.dq) << " m exceeds "
          << cfg.divergence_m << " m (state x=" << state.x << " y=" << state.y
          << " v=" << state.v << " heading=" << state.heading << ", dp=" << dbg.dp
          << ", steer=" << dbg.steer << ")";
      throw DivergenceError(msg.str());
    }

    ControlInput applied;
    state = step(state, input, vehicle, cfg.dt,
                 cs.has_prev_steer ? std::optional<double>(cs.prev_steer) : std::nullopt,
                 &applied);
    cs.prev_steer = applied.steer;
    cs.has_prev_steer = true;

    t += cfg.dt;
    ++result.ticks;
    result.tracked.points.push_back({t, state.x, state.y, state.v, state.heading});
  }
  validate_trajectory(result.tracked);
  return result;
}

}  // namespace sttrack
