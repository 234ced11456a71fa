#include "sttrack/error_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "sttrack/errors.hpp"

namespace sttrack {

ErrorSeries compute_errors(const Trajectory& target, const Trajectory& tracked, double dt,
                           double eps) {
  OffsetSeries offsets = offset_series(target, tracked, dt, eps);
  ErrorSeries series;
  series.samples.reserve(offsets.samples.size());
  for (const OffsetSample& os : offsets.samples) {
    TrajectoryPoint tp = sample(target, os.t);
    TrajectoryPoint rp = sample(tracked, os.t);
    ErrorSample e;
    e.t = os.t;
    e.speed_error = rp.v - tp.v;
    e.heading_error = wrap_angle(rp.heading - tp.heading);
    e.lateral_error = os.dq;
    e.leadlag_error = os.dp;
    series.samples.push_back(e);
  }
  return series;
}

namespace {
ChannelSummary summarize_channel(const ErrorSeries& series, double ErrorSample::* channel,
                                 const std::map<std::string, Band>& bands,
                                 const std::string& name) {
  ChannelSummary out;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t in_band = 0;
  auto band_it = bands.find(name);
  for (const auto& s : series.samples) {
    double v = s.*channel;
    out.max_abs = std::max(out.max_abs, std::abs(v));
    sum += v;
    sum_sq += v * v;
    if (band_it != bands.end() && v >= band_it->second.lo && v <= band_it->second.hi) ++in_band;
  }
  auto n = static_cast<double>(series.samples.size());
  out.mean = sum / n;
  out.rms = std::sqrt(sum_sq / n);
  if (band_it != bands.end()) {
    out.band = band_it->second;
    out.band_fraction = static_cast<double>(in_band) / n;
  }
  return out;
}
}  // namespace

ErrorSummary summarize(const ErrorSeries& series, const std::map<std::string, Band>& bands) {
  if (series.samples.empty()) throw DataError("summarize: empty error series");
  ErrorSummary out;
  out.speed = summarize_channel(series, &ErrorSample::speed_error, bands, "speed");
  out.heading = summarize_channel(series, &ErrorSample::heading_error, bands, "heading");
  out.lateral = summarize_channel(series, &ErrorSample::lateral_error, bands, "lateral");
  out.leadlag = summarize_channel(series, &ErrorSample::leadlag_error, bands, "leadlag");
  return out;
}

EpisodeStats episode_stats(const ErrorSeries& series, double threshold) {
  EpisodeStats stats;
  stats.threshold = threshold;
  bool in_episode = false;
  for (const auto& s : series.samples) {
    bool outside = std::abs(s.leadlag_error) > threshold;
    if (outside && !in_episode) ++stats.count;
    in_episode = outside;
  }
  stats.all_reentered = !in_episode;
  return stats;
}

}  // namespace sttrack
