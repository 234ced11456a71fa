#include "sttrack/target_generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sttrack/errors.hpp"
#include "sttrack/trajectory_io.hpp"

namespace sttrack {

void validate(const SpeedProfileConfig& cfg) {
  if (!(cfg.v_desired > 0.0)) throw ConfigError("speed_profile.v_desired must be > 0");
  if (!(cfg.a_accel > 0.0)) throw ConfigError("speed_profile.a_accel must be > 0");
  if (!(cfg.a_decel > 0.0)) throw ConfigError("speed_profile.a_decel must be > 0");
  if (!(cfg.a_lat_max > 0.0)) throw ConfigError("speed_profile.a_lat_max must be > 0");
  if (cfg.noise_fraction < 0.0 || cfg.noise_fraction >= 0.5)
    throw ConfigError("speed_profile.noise_fraction must be in [0, 0.5)");
  if (cfg.v_start < 0.0 || cfg.v_end < 0.0)
    throw ConfigError("speed_profile start/end speeds must be >= 0");
}

void validate(const AlignmentSpec& spec) {
  if (spec.segments.empty()) throw ConfigError("alignment.segments must not be empty");
  for (std::size_t i = 0; i < spec.segments.size(); ++i) {
    const auto& seg = spec.segments[i];
    std::string where = "alignment.segments[" + std::to_string(i) + "]";
    if (!(seg.length > 0.0)) throw ConfigError(where + ".length must be > 0");
    if (seg.kind == SegmentKind::Arc && seg.radius < 30.0)
      throw ConfigError(where + ".radius must be >= 30 m for arcs");
    if (seg.kind == SegmentKind::Spiral && seg.radius != 0.0 && seg.radius < 30.0)
      throw ConfigError(where + ".radius must be 0 (to straight) or >= 30 m");
  }
}

std::vector<CenterlinePoint> load_centerline(const std::string& path,
                                             std::vector<std::string>* warnings) {
  return load_centerline_csv(path, warnings);
}

namespace {
struct Pose {
  double x = 0.0, y = 0.0, heading = 0.0;
};

Pose advance_const_curvature(const Pose& p, double kappa, double ds) {
  Pose out;
  out.heading = p.heading + kappa * ds;
  if (std::abs(kappa) < 1e-12) {
    out.x = p.x + ds * std::cos(p.heading);
    out.y = p.y + ds * std::sin(p.heading);
  } else {
    out.x = p.x + (std::sin(out.heading) - std::sin(p.heading)) / kappa;
    out.y = p.y + (std::cos(p.heading) - std::cos(out.heading)) / kappa;
  }
  return out;
}
}  // namespace

std::vector<CenterlinePoint> synth_alignment(const AlignmentSpec& spec, double spacing) {
  validate(spec);
  if (!(spacing > 0.0)) throw ConfigError("alignment spacing must be > 0");

  // Flatten segments into constant-curvature pieces; spirals become 10
  // subarcs sampling their linear curvature ramp at midpoints.
  std::vector<std::pair<double, double>> pieces;  // (length, curvature)
  double kappa = 0.0;
  for (const auto& seg : spec.segments) {
    double sign = seg.direction == TurnDirection::Left ? 1.0 : -1.0;
    switch (seg.kind) {
      case SegmentKind::Straight:
        kappa = 0.0;
        pieces.emplace_back(seg.length, 0.0);
        break;
      case SegmentKind::Arc:
        kappa = sign / seg.radius;
        pieces.emplace_back(seg.length, kappa);
        break;
      case SegmentKind::Spiral: {
        double k_end = seg.radius == 0.0 ? 0.0 : sign / seg.radius;
        constexpr int kSubarcs = 10;
        for (int j = 0; j < kSubarcs; ++j) {
          double mid = (j + 0.5) / kSubarcs;
          pieces.emplace_back(seg.length / kSubarcs, kappa + (k_end - kappa) * mid);
        }
        kappa = k_end;
        break;
      }
    }
  }

  std::vector<CenterlinePoint> out;
  Pose pose;
  double s = 0.0;        // station at `pose`
  double next_s = 0.0;   // next sample station
  out.push_back({0.0, pose.x, pose.y});
  next_s = spacing;
  for (const auto& [len, k] : pieces) {
    double piece_end = s + len;
    while (next_s <= piece_end + 1e-9) {
      pose = advance_const_curvature(pose, k, next_s - s);
      s = next_s;
      out.push_back({s, pose.x, pose.y});
      next_s += spacing;
    }
    if (s < piece_end) {
      pose = advance_const_curvature(pose, k, piece_end - s);
      s = piece_end;
    }
  }
  if (s > out.back().station + 1e-9) out.push_back({s, pose.x, pose.y});
  return out;
}

std::vector<double> build_speed_profile(const std::vector<CenterlinePoint>& centerline,
                                        const SpeedProfileConfig& cfg) {
  validate(cfg);
  std::size_t n = centerline.size();
  if (n < 2) throw DataError("speed profile needs a centerline with >= 2 points");

  std::vector<double> cap(n, cfg.v_desired);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = std::clamp<std::size_t>(i, 1, n - 2);
    double kappa = n >= 3 ? curvature_three_point({centerline[j - 1].x, centerline[j - 1].y},
                                                  {centerline[j].x, centerline[j].y},
                                                  {centerline[j + 1].x, centerline[j + 1].y})
                          : 0.0;
    if (std::abs(kappa) > 1e-12)
      cap[i] = std::min(cap[i], std::sqrt(cfg.a_lat_max / std::abs(kappa)));
  }

  std::vector<double> v(n);
  v[0] = std::min(cfg.v_start, cap[0]);
  for (std::size_t i = 1; i < n; ++i) {
    double ds = centerline[i].station - centerline[i - 1].station;
    v[i] = std::min(cap[i], std::sqrt(v[i - 1] * v[i - 1] + 2.0 * cfg.a_accel * ds));
  }
  v[n - 1] = std::min(v[n - 1], cfg.v_end);
  for (std::size_t i = n - 1; i-- > 0;) {
    double ds = centerline[i + 1].station - centerline[i].station;
    v[i] = std::min(v[i], std::sqrt(v[i + 1] * v[i + 1] + 2.0 * cfg.a_decel * ds));
  }
  if (v[0] + 1e-9 < std::min(cfg.v_start, cap[0])) {
    std::ostringstream msg;
    msg << "infeasible speed profile: v_start " << cfg.v_start
        << " m/s cannot be slowed to meet downstream limits (allowed start "
        << v[0] << " m/s)";
    throw DataError(msg.str());
  }
  return v;
}

std::vector<double> apply_speed_noise(const std::vector<double>& profile,
                                      const SpeedProfileConfig& cfg) {
  validate(cfg);
  if (cfg.noise_fraction == 0.0) return profile;
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    // Top 53 bits -> [0,1); avoids distribution implementation differences.
    double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double u = (2.0 * u01 - 1.0) * cfg.noise_fraction;
    out[i] = std::max(profile[i] * (1.0 + u), 0.1);
  }
  return out;
}

Trajectory to_trajectory(const std::vector<CenterlinePoint>& centerline,
                         const std::vector<double>& profile) {
  std::size_t n = centerline.size();
  if (n < 2) throw DataError("to_trajectory: centerline needs >= 2 points");
  if (profile.size() != n)
    throw DataError("to_trajectory: profile length " + std::to_string(profile.size()) +
                    " does not match centerline length " + std::to_string(n));
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (!(profile[i] > 0.0))
      throw DataError("to_trajectory: interior zero speed at station " +
                      std::to_string(centerline[i].station));

  std::vector<TrajectoryPoint> pts(n);
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      double ds = centerline[i].station - centerline[i - 1].station;
      double v_mid = 0.5 * (profile[i - 1] + profile[i]);
      if (!(v_mid > 0.0))
        throw DataError("to_trajectory: zero-speed interval ending at station " +
                        std::to_string(centerline[i].station));
      t += ds / v_mid;
    }
    std::size_t a = i == 0 ? 0 : i - 1;
    std::size_t b = i + 1 == n ? i : i + 1;
    double heading = std::atan2(centerline[b].y - centerline[a].y,
                                centerline[b].x - centerline[a].x);
    pts[i] = {t, centerline[i].x, centerline[i].y, profile[i], wrap_angle(heading)};
  }
  return make_trajectory(std::move(pts));
}

double centerline_length(const std::vector<CenterlinePoint>& centerline) {
  if (centerline.empty()) return 0.0;
  return centerline.back().station - centerline.front().station;
}

}  // namespace sttrack
