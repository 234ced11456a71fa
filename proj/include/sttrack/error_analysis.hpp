#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sttrack/geometry.hpp"
#include "sttrack/leadlag.hpp"

namespace sttrack {

// The four tracking error indicators at one common-clock tick.
// Conventions: speed_error = tracked - target (+ = too fast);
// heading_error = wrap(tracked - target); lateral_error = dq (+ = left);
// leadlag_error = dp (+ = lead).
struct ErrorSample {
  double t = 0.0;
  double speed_error = 0.0;    // m/s
  double heading_error = 0.0;  // radians, in (-pi, pi]
  double lateral_error = 0.0;  // meters
  double leadlag_error = 0.0;  // meters
};

struct ErrorSeries {
  std::vector<ErrorSample> samples;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

struct ChannelSummary {
  double max_abs = 0.0;
  double rms = 0.0;
  double mean = 0.0;
  std::optional<Band> band;
  std::optional<double> band_fraction;  // in [0, 1]
};

struct ErrorSummary {
  ChannelSummary speed;
  ChannelSummary heading;
  ChannelSummary lateral;
  ChannelSummary leadlag;
};

// Maximal runs of |leadlag| > threshold; `all_reentered` is false when
// the last run extends to the final sample (the offset never came back
// inside the band).
struct EpisodeStats {
  int count = 0;
  bool all_reentered = true;
  double threshold = 0.5;
};

// Common-clock resampling of both trajectories; speed/heading by direct
// channel differencing, lateral/leadlag delegated to offset_series (the
// dp/dq values are shared bit-exactly).
ErrorSeries compute_errors(const Trajectory& target, const Trajectory& tracked, double dt = 0.01,
                           double eps = 0.01);

// Band keys: "speed", "heading", "lateral", "leadlag". Channels without
// a band get statistics only.
ErrorSummary summarize(const ErrorSeries& series, const std::map<std::string, Band>& bands = {});

EpisodeStats episode_stats(const ErrorSeries& series, double threshold);

}  // namespace sttrack
