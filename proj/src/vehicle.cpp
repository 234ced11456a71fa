#include "sttrack/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sttrack/errors.hpp"
#include "sttrack/geometry.hpp"

namespace sttrack {

namespace {
struct Derivatives {
  double dx, dy, dheading, dv;
};

Derivatives dynamics(const VehicleState& s, const ControlInput& u, double wheelbase) {
  return {s.v * std::cos(s.heading), s.v * std::sin(s.heading),
          s.v * std::tan(u.steer) / wheelbase, u.accel};
}

VehicleState advance(const VehicleState& s, const Derivatives& d, double h) {
  return {s.x + d.dx * h, s.y + d.dy * h, s.heading + d.dheading * h, s.v + d.dv * h};
}
}  // namespace

void validate(const VehicleParams& p) {
  if (!(p.wheelbase > 0.0)) throw ConfigError("vehicle.wheelbase must be > 0");
  if (!(p.max_steer > 0.0)) throw ConfigError("vehicle.max_steer must be > 0");
  if (!(p.max_steer_rate > 0.0)) throw ConfigError("vehicle.max_steer_rate must be > 0");
  if (!(p.max_accel > 0.0)) throw ConfigError("vehicle.max_accel must be > 0");
  if (!(p.max_decel < 0.0)) throw ConfigError("vehicle.max_decel must be < 0");
}

ControlInput saturate_input(const ControlInput& input, const VehicleParams& params, double dt,
                            std::optional<double> prev_steer) {
  ControlInput out = input;
  out.accel = std::clamp(out.accel, params.max_decel, params.max_accel);
  if (prev_steer) {
    double max_delta = params.max_steer_rate * dt;
    out.steer = std::clamp(out.steer, *prev_steer - max_delta, *prev_steer + max_delta);
  }
  out.steer = std::clamp(out.steer, -params.max_steer, params.max_steer);
  return out;
}

VehicleState step(const VehicleState& state, const ControlInput& input,
                  const VehicleParams& params, double dt, std::optional<double> prev_steer,
                  ControlInput* applied) {
  if (!std::isfinite(input.accel) || !std::isfinite(input.steer))
    throw std::invalid_argument("vehicle step: non-finite control input");
  if (!(dt > 0.0) || dt > 0.1)
    throw std::invalid_argument("vehicle step: dt must be in (0, 0.1], got " + std::to_string(dt));

  ControlInput u = saturate_input(input, params, dt, prev_steer);
  if (applied) *applied = u;

  Derivatives k1 = dynamics(state, u, params.wheelbase);
  Derivatives k2 = dynamics(advance(state, k1, dt / 2.0), u, params.wheelbase);
  Derivatives k3 = dynamics(advance(state, k2, dt / 2.0), u, params.wheelbase);
  Derivatives k4 = dynamics(advance(state, k3, dt), u, params.wheelbase);

  VehicleState out;
  out.x = state.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.y = state.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
  out.heading = wrap_angle(state.heading +
                           dt / 6.0 * (k1.dheading + 2.0 * k2.dheading + 2.0 * k3.dheading + k4.dheading));
  out.v = std::max(0.0, state.v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv));
  return out;
}

}  // namespace sttrack
