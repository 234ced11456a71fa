#include "sttrack/compensation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sttrack/errors.hpp"

namespace sttrack {

void validate(const CompensationConfig& cfg) {
  if (!(cfg.threshold > 0.0)) throw ConfigError("compensation.threshold_m must be > 0");
  if (!(cfg.window > 0.0)) throw ConfigError("compensation.window_s must be > 0");
  if (!(cfg.a_min < 0.0 && cfg.a_max > 0.0))
    throw ConfigError("compensation clamps must satisfy a_min < 0 < a_max");
}

double compensation_accel(double dp, const CompensationConfig& cfg) {
  if (!std::isfinite(dp)) throw std::invalid_argument("compensation_accel: dp is not finite");
  double a = 0.0;
  if (dp > cfg.threshold) {
    a = -2.0 * (dp - cfg.threshold) / (cfg.window * cfg.window);
  } else if (dp < -cfg.threshold) {
    a = -2.0 * (dp + cfg.threshold) / (cfg.window * cfg.window);
  }
  return std::clamp(a, cfg.a_min, cfg.a_max);
}

}  // namespace sttrack
