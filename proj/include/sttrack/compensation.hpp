#pragma once

namespace sttrack {

// Threshold-gated longitudinal acceleration compensation. Inside the
// +-threshold dead band no compensation is applied; outside it the
// commanded acceleration would close the excess offset back to the band
// boundary in `window` seconds if held constant.
struct CompensationConfig {
  double threshold = 0.5;  // meters, dead band half-width
  double window = 1.0;     // seconds, correction horizon T_w
  double a_min = -3.0;     // m/s^2, clamp floor
  double a_max = 3.0;      // m/s^2, clamp ceiling
};

// Throws ConfigError on violated invariants (threshold > 0, window > 0,
// a_min < 0 < a_max).
void validate(const CompensationConfig& cfg);

// dp > threshold  -> -2 (dp - threshold) / window^2  (slow a leading vehicle)
// dp < -threshold -> -2 (dp + threshold) / window^2  (speed up a lagging one)
// |dp| <= threshold -> 0. Result clamped to [a_min, a_max].
// Throws std::invalid_argument on non-finite dp.
double compensation_accel(double dp, const CompensationConfig& cfg);

}  // namespace sttrack
