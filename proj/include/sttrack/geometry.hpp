#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sttrack {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

// Unit direction vector; ux^2 + uy^2 == 1 within 1e-12.
struct UnitVec2 {
  double ux = 1.0;
  double uy = 0.0;

  Vec2 vec() const { return {ux, uy}; }
  double dot(const Vec2& v) const { return ux * v.x + uy * v.y; }
};

// Timestamped pose + speed sample. The atom of target and tracked
// trajectories alike.
struct TrajectoryPoint {
  double t = 0.0;        // seconds
  double x = 0.0;        // meters
  double y = 0.0;        // meters
  double v = 0.0;        // m/s, >= 0
  double heading = 0.0;  // radians, wrapped to (-pi, pi]

  Vec2 position() const { return {x, y}; }
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;

  double start_time() const { return points.front().t; }
  double end_time() const { return points.back().t; }
  std::size_t size() const { return points.size(); }
};

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

// Interpolates between two angles along the shortest arc; result wrapped.
double lerp_angle(double a0, double a1, double lambda);

// Throws DataError unless: >= 2 points, all fields finite, v >= 0,
// heading wrapped, t strictly increasing.
void validate_trajectory(const Trajectory& traj);

Trajectory make_trajectory(std::vector<TrajectoryPoint> points);

// Linear interpolation of x, y, v; heading via shortest arc. Exact at
// stored timestamps. Throws std::out_of_range (naming the valid interval)
// for t outside [start_time, end_time].
TrajectoryPoint sample(const Trajectory& traj, double t);

// Forward unit tangent at t0 from finite differences over the local
// sampling step (central in the interior, one-sided at the ends). Falls
// back to the stored heading when the local speed is below
// kTangentSpeedFloor; throws DataError if that heading is unusable.
UnitVec2 tangent_unit(const Trajectory& traj, double t0);

inline constexpr double kTangentSpeedFloor = 0.01;  // m/s

// +90 degree rotation: (ux, uy) -> (-uy, ux). Left-pointing normal.
inline UnitVec2 normal_unit(const UnitVec2& u) { return {-u.uy, u.ux}; }

// Signed curvature of the circumscribed circle through three points;
// positive = left turn, 0 for collinear points. Throws DataError on
// coincident points.
double curvature_three_point(const Vec2& a, const Vec2& b, const Vec2& c);

// Curvature at a sample index from its neighbors; endpoints copy the
// nearest interior value. Trajectories with < 3 points are straight (0).
double curvature_at(const Trajectory& traj, std::size_t index);

}  // namespace sttrack
