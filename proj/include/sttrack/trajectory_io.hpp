#pragma once

#include <string>
#include <vector>

#include "sttrack/geometry.hpp"
#include "sttrack/leadlag.hpp"

namespace sttrack {

struct CenterlinePoint;
struct ErrorSeries;

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

// Optional `comments` are written as leading `# ...` lines; loaders skip
// such lines. All files are UTF-8, LF, '.' decimal separator.

// Header: t,x,y,v,heading
void save_trajectory_csv(const Trajectory& traj, const std::string& path,
                         const std::vector<std::string>& comments = {});
Trajectory load_trajectory_csv(const std::string& path);

// Header: station,x,y
void save_centerline_csv(const std::vector<CenterlinePoint>& centerline, const std::string& path,
                         const std::vector<std::string>& comments = {});
std::vector<CenterlinePoint> load_centerline_csv(const std::string& path,
                                                 std::vector<std::string>* warnings = nullptr);

// Header: t,dp,dq,lon_class,lat_class
void save_offsets_csv(const OffsetSeries& series, const std::string& path,
                      const std::vector<std::string>& comments = {});
OffsetSeries load_offsets_csv(const std::string& path);

// Header: t,speed_error,heading_error,lateral_error,leadlag_error,leadlag_seconds
void save_errors_csv(const ErrorSeries& series, const Trajectory& target, const std::string& path,
                     const std::vector<std::string>& comments = {});
ErrorSeries load_errors_csv(const std::string& path);

// Header: t,target_x,target_y,tracked_x,tracked_y; one row per series
// tick, optionally limited to ticks with t <= window_end.
void save_pairing_csv(const Trajectory& target, const Trajectory& tracked,
                      const ErrorSeries& series, const std::string& path,
                      const std::vector<std::string>& comments = {},
                      double window_end = -1.0);

}  // namespace sttrack
