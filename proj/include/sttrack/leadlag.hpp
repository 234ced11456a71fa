#pragma once

#include <utility>
#include <vector>

#include "sttrack/geometry.hpp"

namespace sttrack {

enum class LongitudinalClass { Lead, Lag, OnPoint };
enum class LateralClass { Left, Right, OnLine };

// Signed offsets of the tracked point relative to the target point taken
// at the same instant, expressed in the target's tangent frame.
struct OffsetSample {
  double t = 0.0;   // seconds
  double dp = 0.0;  // meters along the target tangent; + = lead, - = lag
  double dq = 0.0;  // meters along the left normal; + = left, - = right
  LongitudinalClass lon = LongitudinalClass::OnPoint;
  LateralClass lat = LateralClass::OnLine;
};

struct OffsetSeries {
  std::vector<OffsetSample> samples;
  double eps = 0.01;  // classification tolerance, meters
};

// Displacement and frame used for one offset evaluation; handy for
// checking the orthonormal decomposition independently.
struct OffsetFrame {
  Vec2 pp;      // tracked - target position difference
  UnitVec2 ur;  // target forward tangent
  UnitVec2 un;  // target left normal
  double dp = 0.0;
  double dq = 0.0;
};

OffsetFrame offset_frame(const Trajectory& target, const TrajectoryPoint& tracked_pt, double t0);

// pp . ur : + ahead of schedule (lead), - behind (lag).
double longitudinal_offset(const Trajectory& target, const TrajectoryPoint& tracked_pt, double t0);

// pp . un : + left of the target path, - right.
double lateral_offset(const Trajectory& target, const TrajectoryPoint& tracked_pt, double t0);

std::pair<LongitudinalClass, LateralClass> classify(double dp, double dq, double eps);

// Samples both trajectories on the common clock t_start, t_start+dt, ...
// over the overlapping window. Throws DataError when the time domains do
// not overlap.
OffsetSeries offset_series(const Trajectory& target, const Trajectory& tracked, double dt = 0.01,
                           double eps = 0.01);

const char* to_string(LongitudinalClass c);
const char* to_string(LateralClass c);

}  // namespace sttrack
