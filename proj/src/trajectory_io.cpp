#include "sttrack/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "sttrack/error_analysis.hpp"
#include "sttrack/errors.hpp"
#include "sttrack/target_generator.hpp"

namespace sttrack {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
  if (!out) throw DataError("cannot open " + path + " for writing");
  return out;
}

void write_comments(std::ofstream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
}

struct CsvReader {
  std::string path;
  std::ifstream in;
  std::size_t line_no = 0;

  explicit CsvReader(const std::string& p) : path(p), in(p, std::ios::binary) {
    if (!in) throw DataError("cannot open " + path + " for reading");
  }

  // Next non-comment line; false at EOF.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
  }
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const CsvReader& reader, std::string_view field) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw DataError(reader.path + ":" + std::to_string(reader.line_no) +
                    ": malformed number '" + std::string(field) + "'");
  return value;
}

void expect_header(CsvReader& reader, const std::string& expected) {
  std::string line;
  if (!reader.next(line)) reader.fail("empty file, expected header '" + expected + "'");
  if (line != expected) reader.fail("expected header '" + expected + "', got '" + line + "'");
}

}  // namespace

void save_trajectory_csv(const Trajectory& traj, const std::string& path,
                         const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  out << "t,x,y,v,heading\n";
  for (const auto& p : traj.points)
    out << format_double(p.t) << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(p.v) << ',' << format_double(p.heading) << "\n";
}

Trajectory load_trajectory_csv(const std::string& path) {
  CsvReader reader(path);
  expect_header(reader, "t,x,y,v,heading");
  Trajectory traj;
  std::string line;
  while (reader.next(line)) {
    auto fields = split_fields(line);
    if (fields.size() != 5) reader.fail("expected 5 fields, got " + std::to_string(fields.size()));
    TrajectoryPoint p;
    p.t = parse_double(reader, fields[0]);
    p.x = parse_double(reader, fields[1]);
    p.y = parse_double(reader, fields[2]);
    p.v = parse_double(reader, fields[3]);
    p.heading = parse_double(reader, fields[4]);
    traj.points.push_back(p);
  }
  try {
    validate_trajectory(traj);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
  return traj;
}

void save_centerline_csv(const std::vector<CenterlinePoint>& centerline, const std::string& path,
                         const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  out << "station,x,y\n";
  for (const auto& p : centerline)
    out << format_double(p.station) << ',' << format_double(p.x) << ',' << format_double(p.y)
        << "\n";
}

std::vector<CenterlinePoint> load_centerline_csv(const std::string& path,
                                                 std::vector<std::string>* warnings) {
  CsvReader reader(path);
  expect_header(reader, "station,x,y");
  std::vector<CenterlinePoint> pts;
  std::string line;
  while (reader.next(line)) {
    auto fields = split_fields(line);
    if (fields.size() != 3) reader.fail("expected 3 fields, got " + std::to_string(fields.size()));
    CenterlinePoint p;
    p.station = parse_double(reader, fields[0]);
    p.x = parse_double(reader, fields[1]);
    p.y = parse_double(reader, fields[2]);
    if (!std::isfinite(p.station) || !std::isfinite(p.x) || !std::isfinite(p.y))
      reader.fail("non-finite value");
    if (!pts.empty()) {
      double gap = p.station - pts.back().station;
      if (gap == 0.0) reader.fail("duplicate station " + format_double(p.station));
      if (gap < 0.0) reader.fail("non-monotone station " + format_double(p.station));
      if (gap > 2.0 && warnings)
        warnings->push_back("gap of " + format_double(gap) + " m before station " +
                            format_double(p.station) + " (expected spacing ~1 m)");
    }
    pts.push_back(p);
  }
  if (pts.size() < 2) throw DataError(path + ": centerline needs at least 2 points");
  return pts;
}

void save_offsets_csv(const OffsetSeries& series, const std::string& path,
                      const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  out << "t,dp,dq,lon_class,lat_class\n";
  for (const auto& s : series.samples)
    out << format_double(s.t) << ',' << format_double(s.dp) << ',' << format_double(s.dq) << ','
        << to_string(s.lon) << ',' << to_string(s.lat) << "\n";
}

namespace {
LongitudinalClass parse_lon_class(const CsvReader& reader, std::string_view f) {
  if (f == "Lead") return LongitudinalClass::Lead;
  if (f == "Lag") return LongitudinalClass::Lag;
  if (f == "OnPoint") return LongitudinalClass::OnPoint;
  throw DataError(reader.path + ":" + std::to_string(reader.line_no) +
                  ": unknown longitudinal class '" + std::string(f) + "'");
}

LateralClass parse_lat_class(const CsvReader& reader, std::string_view f) {
  if (f == "Left") return LateralClass::Left;
  if (f == "Right") return LateralClass::Right;
  if (f == "OnLine") return LateralClass::OnLine;
  throw DataError(reader.path + ":" + std::to_string(reader.line_no) +
                  ": unknown lateral class '" + std::string(f) + "'");
}
}  // namespace

OffsetSeries load_offsets_csv(const std::string& path) {
  CsvReader reader(path);
  expect_header(reader, "t,dp,dq,lon_class,lat_class");
  OffsetSeries series;
  std::string line;
  while (reader.next(line)) {
    auto fields = split_fields(line);
    if (fields.size() != 5) reader.fail("expected 5 fields, got " + std::to_string(fields.size()));
    OffsetSample s;
    s.t = parse_double(reader, fields[0]);
    s.dp = parse_double(reader, fields[1]);
    s.dq = parse_double(reader, fields[2]);
    s.lon = parse_lon_class(reader, fields[3]);
    s.lat = parse_lat_class(reader, fields[4]);
    series.samples.push_back(s);
  }
  return series;
}

void save_errors_csv(const ErrorSeries& series, const Trajectory& target, const std::string& path,
                     const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  // leadlag_seconds is a derived convenience column: dp over the target
  // speed at the same tick (speed floored at 0.01 m/s).
  out << "t,speed_error,heading_error,lateral_error,leadlag_error,leadlag_seconds\n";
  for (const auto& s : series.samples) {
    double v_target = sample(target, s.t).v;
    double seconds = s.leadlag_error / std::max(v_target, 0.01);
    out << format_double(s.t) << ',' << format_double(s.speed_error) << ','
        << format_double(s.heading_error) << ',' << format_double(s.lateral_error) << ','
        << format_double(s.leadlag_error) << ',' << format_double(seconds) << "\n";
  }
}

ErrorSeries load_errors_csv(const std::string& path) {
  CsvReader reader(path);
  expect_header(reader, "t,speed_error,heading_error,lateral_error,leadlag_error,leadlag_seconds");
  ErrorSeries series;
  std::string line;
  while (reader.next(line)) {
    auto fields = split_fields(line);
    if (fields.size() != 6) reader.fail("expected 6 fields, got " + std::to_string(fields.size()));
    ErrorSample s;
    s.t = parse_double(reader, fields[0]);
    s.speed_error = parse_double(reader, fields[1]);
    s.heading_error = parse_double(reader, fields[2]);
    s.lateral_error = parse_double(reader, fields[3]);
    s.leadlag_error = parse_double(reader, fields[4]);
    series.samples.push_back(s);
  }
  return series;
}

void save_pairing_csv(const Trajectory& target, const Trajectory& tracked,
                      const ErrorSeries& series, const std::string& path,
                      const std::vector<std::string>& comments, double window_end) {
  auto out = open_out(path);
  write_comments(out, comments);
  out << "t,target_x,target_y,tracked_x,tracked_y\n";
  for (const auto& s : series.samples) {
    if (window_end >= 0.0 && s.t > window_end) break;
    TrajectoryPoint tp = sample(target, s.t);
    TrajectoryPoint rp = sample(tracked, s.t);
    out << format_double(s.t) << ',' << format_double(tp.x) << ',' << format_double(tp.y) << ','
        << format_double(rp.x) << ',' << format_double(rp.y) << "\n";
  }
}

}  // namespace sttrack
