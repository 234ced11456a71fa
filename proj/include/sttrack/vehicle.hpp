#pragma once

#include <optional>

namespace sttrack {

struct VehicleState {
  double x = 0.0;        // meters
  double y = 0.0;        // meters
  double heading = 0.0;  // radians, wrapped to (-pi, pi]
  double v = 0.0;        // m/s, >= 0 (no reverse)
};

struct ControlInput {
  double accel = 0.0;  // m/s^2
  double steer = 0.0;  // radians, front-wheel angle
};

struct VehicleParams {
  double wheelbase = 2.7;       // meters
  double max_steer = 0.6;       // radians
  double max_steer_rate = 0.7;  // rad/s
  double max_accel = 3.0;       // m/s^2
  double max_decel = -6.0;      // m/s^2
};

void validate(const VehicleParams& params);

// Command after actuator saturation: accel clamped to
// [max_decel, max_accel]; steer rate-limited against prev_steer (when
// given) and clamped to +-max_steer.
ControlInput saturate_input(const ControlInput& input, const VehicleParams& params, double dt,
                            std::optional<double> prev_steer);

// Kinematic bicycle step: saturates the input, then integrates
//   x' = v cos(h), y' = v sin(h), h' = v tan(steer)/wheelbase, v' = accel
// with classic RK4 over dt. Speed is floored at 0 and heading wrapped.
// `applied` (optional) receives the post-saturation command. Throws
// std::invalid_argument on non-finite input or dt outside (0, 0.1].
VehicleState step(const VehicleState& state, const ControlInput& input,
                  const VehicleParams& params, double dt,
                  std::optional<double> prev_steer = std::nullopt,
                  ControlInput* applied = nullptr);

}  // namespace sttrack
