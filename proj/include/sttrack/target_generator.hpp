#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sttrack/geometry.hpp"

namespace sttrack {

// Road centerline survey point: arc length from the start plus planar
// coordinates, exported at roughly 1 m spacing.
struct CenterlinePoint {
  double station = 0.0;  // meters
  double x = 0.0;
  double y = 0.0;
};

struct SpeedProfileConfig {
  double v_desired = 27.778;     // m/s (100 km/h)
  double a_accel = 1.0;          // m/s^2
  double a_decel = 1.0;          // m/s^2, magnitude
  double a_lat_max = 2.0;        // m/s^2, lateral comfort cap on curves
  double noise_fraction = 0.02;  // relative speed noise bound
  std::uint64_t seed = 0;
  double v_start = 0.0;  // m/s
  double v_end = 0.0;    // m/s
};

void validate(const SpeedProfileConfig& cfg);

enum class SegmentKind { Straight, Arc, Spiral };
enum class TurnDirection { Left, Right };

// One alignment element. Arcs hold a constant radius; spirals ramp the
// curvature linearly from the running value to the segment's own end
// value (radius == 0 means "flatten back to straight").
struct AlignmentSegment {
  SegmentKind kind = SegmentKind::Straight;
  double length = 0.0;  // meters
  double radius = 0.0;  // meters; arcs require >= 30, spirals allow 0
  TurnDirection direction = TurnDirection::Left;
};

struct AlignmentSpec {
  std::vector<AlignmentSegment> segments;
};

void validate(const AlignmentSpec& spec);

// Reads a `station,x,y` CSV. Throws DataError with the offending line
// number on malformed rows and on non-monotone stations. Appends a note
// to `warnings` for any spacing gap above 2 m.
std::vector<CenterlinePoint> load_centerline(const std::string& path,
                                             std::vector<std::string>* warnings = nullptr);

// Chains the segments from the origin (heading +x) into a G1-continuous
// polyline sampled every `spacing` meters (plus the exact endpoint).
// Spirals are approximated by 10 constant-curvature subarcs.
std::vector<CenterlinePoint> synth_alignment(const AlignmentSpec& spec, double spacing = 1.0);

// Per-station speed: curvature cap min(v_desired, sqrt(a_lat_max/|k|)),
// then a forward pass limiting v^2 growth by 2 a_accel ds from v_start
// and a backward pass limiting decay by 2 a_decel ds to v_end. Throws
// DataError when v_start cannot be honored.
std::vector<double> build_speed_profile(const std::vector<CenterlinePoint>& centerline,
                                        const SpeedProfileConfig& cfg);

// Multiplies every speed by (1 + u), u uniform in +-noise_fraction,
// deterministic per seed; noisy speeds are floored at 0.1 m/s.
// noise_fraction == 0 returns the input unchanged.
std::vector<double> apply_speed_noise(const std::vector<double>& profile,
                                      const SpeedProfileConfig& cfg);

// Timestamps the centerline by integrating dt = ds / v_mid and takes
// headings from the centerline tangent. Interior zero speeds are an
// error; zero endpoint speeds integrate as a constant-acceleration ramp
// (same v_mid formula).
Trajectory to_trajectory(const std::vector<CenterlinePoint>& centerline,
                         const std::vector<double>& profile);

double centerline_length(const std::vector<CenterlinePoint>& centerline);

}  // namespace sttrack
