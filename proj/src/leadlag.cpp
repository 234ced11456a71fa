#include "sttrack/leadlag.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sttrack/errors.hpp"

namespace sttrack {

OffsetFrame offset_frame(const Trajectory& target, const TrajectoryPoint& tracked_pt, double t0) {
  OffsetFrame f;
  TrajectoryPoint tp = sample(target, t0);
  f.ur = tangent_unit(target, t0);
  f.un = normal_unit(f.ur);
  f.pp = tracked_pt.position() - tp.position();
  f.dp = f.ur.dot(f.pp);
  f.dq = f.un.dot(f.pp);
  return f;
}

double longitudinal_offset(const Trajectory& target, const TrajectoryPoint& tracked_pt, double t0) {
  return offset_frame(target, tracked_pt, t0).dp;
}

double lateral_offset(const Trajectory& target, const TrajectoryPoint& tracked_pt, double t0) {
  return offset_frame(target, tracked_pt, t0).dq;
}

std::pair<LongitudinalClass, LateralClass> classify(double dp, double dq, double eps) {
  if (eps < 0.0) throw std::invalid_argument("classification tolerance must be >= 0");
  LongitudinalClass lon = std::abs(dp) <= eps
                              ? LongitudinalClass::OnPoint
                              : (dp > 0.0 ? LongitudinalClass::Lead : LongitudinalClass::Lag);
  LateralClass lat = std::abs(dq) <= eps ? LateralClass::OnLine
                                         : (dq > 0.0 ? LateralClass::Left : LateralClass::Right);
  return {lon, lat};
}

OffsetSeries offset_series(const Trajectory& target, const Trajectory& tracked, double dt,
                           double eps) {
  if (dt <= 0.0) throw std::invalid_argument("offset_series: dt must be > 0");
  double t_start = std::max(target.start_time(), tracked.start_time());
  double t_end = std::min(target.end_time(), tracked.end_time());
  if (t_start > t_end) {
    std::ostringstream msg;
    msg << "no time overlap: target [" << target.start_time() << ", " << target.end_time()
        << "] vs tracked [" << tracked.start_time() << ", " << tracked.end_time() << "]";
    throw DataError(msg.str());
  }

  OffsetSeries series;
  series.eps = eps;
  auto n = static_cast<std::size_t>(std::floor((t_end - t_start) / dt + 1e-9));
  series.samples.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double t = std::min(t_start + static_cast<double>(i) * dt, t_end);
    TrajectoryPoint pt = sample(tracked, t);
    OffsetFrame f = offset_frame(target, pt, t);
    auto [lon, lat] = classify(f.dp, f.dq, eps);
    series.samples.push_back({t, f.dp, f.dq, lon, lat});
  }
  return series;
}

const char* to_string(LongitudinalClass c) {
  switch (c) {
    case LongitudinalClass::Lead: return "Lead";
    case LongitudinalClass::Lag: return "Lag";
    default: return "OnPoint";
  }
}

const char* to_string(LateralClass c) {
  switch (c) {
    case LateralClass::Left: return "Left";
    case LateralClass::Right: return "Right";
    default: return "OnLine";
  }
}

}  // namespace sttrack
