#include "sttrack/geometry.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sttrack/errors.hpp"

namespace sttrack {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool finite(double v) { return std::isfinite(v); }

// Index i such that points[i].t <= t <= points[i+1].t. Callers have
// already range-checked t.
std::size_t segment_index(const Trajectory& traj, double t) {
  const auto& pts = traj.points;
  auto it = std::upper_bound(pts.begin(), pts.end(), t,
                             [](double val, const TrajectoryPoint& p) { return val < p.t; });
  std::size_t i = static_cast<std::size_t>(it - pts.begin());
  if (i == 0) return 0;
  if (i >= pts.size()) return pts.size() - 2;
  return i - 1;
}
}  // namespace

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double lerp_angle(double a0, double a1, double lambda) {
  return wrap_angle(a0 + wrap_angle(a1 - a0) * lambda);
}

void validate_trajectory(const Trajectory& traj) {
  const auto& pts = traj.points;
  if (pts.size() < 2) throw DataError("trajectory needs at least 2 points, got " + std::to_string(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!finite(p.t) || !finite(p.x) || !finite(p.y) || !finite(p.v) || !finite(p.heading))
      throw DataError("non-finite field in trajectory point " + std::to_string(i));
    if (p.v < 0.0) throw DataError("negative speed at point " + std::to_string(i));
    if (p.heading <= -kPi || p.heading > kPi)
      throw DataError("heading not wrapped to (-pi, pi] at point " + std::to_string(i));
    if (i > 0 && !(p.t > pts[i - 1].t))
      throw DataError("timestamps not strictly increasing at point " + std::to_string(i) +
                      " (t=" + std::to_string(p.t) + ")");
  }
}

Trajectory make_trajectory(std::vector<TrajectoryPoint> points) {
  Trajectory traj{std::move(points)};
  validate_trajectory(traj);
  return traj;
}

TrajectoryPoint sample(const Trajectory& traj, double t) {
  const auto& pts = traj.points;
  if (t < pts.front().t || t > pts.back().t) {
    std::ostringstream msg;
    msg << "sample time " << t << " outside trajectory interval [" << pts.front().t << ", "
        << pts.back().t << "]";
    throw std::out_of_range(msg.str());
  }
  std::size_t i = segment_index(traj, t);
  const auto& a = pts[i];
  const auto& b = pts[i + 1];
  if (t == a.t) return a;
  if (t == b.t) return b;
  double lambda = (t - a.t) / (b.t - a.t);
  TrajectoryPoint out;
  out.t = t;
  out.x = a.x + lambda * (b.x - a.x);
  out.y = a.y + lambda * (b.y - a.y);
  out.v = a.v + lambda * (b.v - a.v);
  out.heading = lerp_angle(a.heading, b.heading, lambda);
  return out;
}

UnitVec2 tangent_unit(const Trajectory& traj, double t0) {
  const auto& pts = traj.points;
  // Range check via sample(); also the fallback needs the local heading.
  TrajectoryPoint at = sample(traj, t0);

  std::size_t i = segment_index(traj, t0);
  double h = pts[i + 1].t - pts[i].t;
  double t_lo = pts.front().t;
  double t_hi = pts.back().t;

  Vec2 d;
  double dt = 0.0;
  if (t0 - h >= t_lo && t0 + h <= t_hi) {
    d = sample(traj, t0 + h).position() - sample(traj, t0 - h).position();
    dt = 2.0 * h;
  } else if (t0 + h <= t_hi) {
    d = sample(traj, t0 + h).position() - at.position();
    dt = h;
  } else if (t0 - h >= t_lo) {
    d = at.position() - sample(traj, t0 - h).position();
    dt = h;
  } else {
    d = pts.back().position() - pts.front().position();
    dt = t_hi - t_lo;
  }

  double speed = d.norm() / dt;
  if (speed < kTangentSpeedFloor) {
    if (std::isfinite(at.heading)) return {std::cos(at.heading), std::sin(at.heading)};
    throw DataError("degenerate tangent at t=" + std::to_string(t0) +
                    ": local speed below floor and no usable heading");
  }
  double n = d.norm();
  return {d.x / n, d.y / n};
}

double curvature_three_point(const Vec2& a, const Vec2& b, const Vec2& c) {
  Vec2 ab = b - a;
  Vec2 bc = c - b;
  Vec2 ac = c - a;
  double lab = ab.norm(), lbc = bc.norm(), lac = ac.norm();
  if (lab < 1e-12 || lbc < 1e-12)
    throw DataError("duplicate points in curvature computation");
  double cross = ab.cross(ac);
  if (cross == 0.0) return 0.0;
  return 2.0 * cross / (lab * lbc * lac);
}

double curvature_at(const Trajectory& traj, std::size_t index) {
  const auto& pts = traj.points;
  if (pts.size() < 3) return 0.0;
  std::size_t i = std::clamp<std::size_t>(index, 1, pts.size() - 2);
  return curvature_three_point(pts[i - 1].position(), pts[i].position(), pts[i + 1].position());
}

}  // namespace sttrack
