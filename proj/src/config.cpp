#include "sttrack/config.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sttrack/errors.hpp"

namespace sttrack {

namespace {
using nlohmann::json;

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown config key: " + path + "." + it.key());
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key + " must be a number");
  return v.get<double>();
}

std::uint64_t get_u64(const json& obj, const std::string& path, const char* key,
                      std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !v.is_number_integer())
    throw ConfigError(path + "." + key + " must be an integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(path + "." + key + " must be a boolean");
  return v.get<bool>();
}

PidGains parse_pid_gains(const json& obj, const std::string& path, const PidGains& defaults) {
  check_keys(obj, path, {"kp", "ki", "kd", "i_clamp"});
  PidGains g = defaults;
  g.kp = get_number(obj, path, "kp", g.kp);
  g.ki = get_number(obj, path, "ki", g.ki);
  g.kd = get_number(obj, path, "kd", g.kd);
  g.i_clamp = get_number(obj, path, "i_clamp", g.i_clamp);
  return g;
}

AlignmentSegment parse_segment(const json& obj, const std::string& path) {
  check_keys(obj, path, {"kind", "length", "radius", "direction"});
  AlignmentSegment seg;
  if (!obj.contains("kind") || !obj.at("kind").is_string())
    throw ConfigError(path + ".kind must be one of straight|arc|spiral");
  std::string kind = obj.at("kind").get<std::string>();
  if (kind == "straight")
    seg.kind = SegmentKind::Straight;
  else if (kind == "arc")
    seg.kind = SegmentKind::Arc;
  else if (kind == "spiral")
    seg.kind = SegmentKind::Spiral;
  else
    throw ConfigError(path + ".kind must be one of straight|arc|spiral, got '" + kind + "'");
  seg.length = get_number(obj, path, "length", 0.0);
  seg.radius = get_number(obj, path, "radius", 0.0);
  if (obj.contains("direction")) {
    std::string dir = obj.at("direction").is_string() ? obj.at("direction").get<std::string>() : "";
    if (dir == "left")
      seg.direction = TurnDirection::Left;
    else if (dir == "right")
      seg.direction = TurnDirection::Right;
    else
      throw ConfigError(path + ".direction must be left|right");
  }
  return seg;
}

std::map<std::string, Band> parse_bands(const json& obj, const std::string& path) {
  std::map<std::string, Band> bands;
  check_keys(obj, path, {"speed", "heading", "lateral", "leadlag"});
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const json& v = it.value();
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(path + "." + it.key() + " must be [lo, hi]");
    Band b{v[0].get<double>(), v[1].get<double>()};
    if (!(b.lo < b.hi)) throw ConfigError(path + "." + it.key() + " must satisfy lo < hi");
    bands[it.key()] = b;
  }
  return bands;
}
}  // namespace

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.analysis.bands = {
      {"speed", {-0.1, 0.5}},
      {"heading", {-0.0005, 0.0015}},
      {"lateral", {-0.0001, 0.00026}},
      {"leadlag", {-0.5, 0.5}},
  };
  return cfg;
}

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(doc, "$",
             {"alignment", "speed_profile", "vehicle", "lqr", "pid", "compensation",
              "simulation", "analysis"});
  RunConfig cfg = default_run_config();

  if (doc.contains("alignment")) {
    const json& a = doc.at("alignment");
    check_keys(a, "alignment", {"centerline", "segments", "spacing"});
    if (a.contains("centerline")) {
      if (!a.at("centerline").is_string())
        throw ConfigError("alignment.centerline must be a file path string");
      cfg.alignment.centerline_path = a.at("centerline").get<std::string>();
    }
    if (a.contains("segments")) {
      if (!a.at("segments").is_array()) throw ConfigError("alignment.segments must be an array");
      AlignmentSpec spec;
      std::size_t i = 0;
      for (const json& s : a.at("segments"))
        spec.segments.push_back(parse_segment(s, "alignment.segments[" + std::to_string(i++) + "]"));
      validate(spec);
      cfg.alignment.spec = std::move(spec);
    }
    if (cfg.alignment.centerline_path && cfg.alignment.spec)
      throw ConfigError("alignment: give either centerline or segments, not both");
    cfg.alignment.spacing = get_number(a, "alignment", "spacing", cfg.alignment.spacing);
    if (!(cfg.alignment.spacing > 0.0)) throw ConfigError("alignment.spacing must be > 0");
  }

  if (doc.contains("speed_profile")) {
    const json& s = doc.at("speed_profile");
    check_keys(s, "speed_profile",
               {"v_desired", "a_accel", "a_decel", "a_lat_max", "noise_fraction", "seed",
                "v_start", "v_end"});
    auto& sp = cfg.speed_profile;
    sp.v_desired = get_number(s, "speed_profile", "v_desired", sp.v_desired);
    sp.a_accel = get_number(s, "speed_profile", "a_accel", sp.a_accel);
    sp.a_decel = get_number(s, "speed_profile", "a_decel", sp.a_decel);
    sp.a_lat_max = get_number(s, "speed_profile", "a_lat_max", sp.a_lat_max);
    sp.noise_fraction = get_number(s, "speed_profile", "noise_fraction", sp.noise_fraction);
    sp.seed = get_u64(s, "speed_profile", "seed", sp.seed);
    sp.v_start = get_number(s, "speed_profile", "v_start", sp.v_start);
    sp.v_end = get_number(s, "speed_profile", "v_end", sp.v_end);
    validate(sp);
  }

  if (doc.contains("vehicle")) {
    const json& v = doc.at("vehicle");
    check_keys(v, "vehicle", {"wheelbase", "max_steer", "max_steer_rate", "max_accel", "max_decel"});
    auto& vp = cfg.vehicle;
    vp.wheelbase = get_number(v, "vehicle", "wheelbase", vp.wheelbase);
    vp.max_steer = get_number(v, "vehicle", "max_steer", vp.max_steer);
    vp.max_steer_rate = get_number(v, "vehicle", "max_steer_rate", vp.max_steer_rate);
    vp.max_accel = get_number(v, "vehicle", "max_accel", vp.max_accel);
    vp.max_decel = get_number(v, "vehicle", "max_decel", vp.max_decel);
    validate(vp);
  }

  if (doc.contains("lqr")) {
    const json& l = doc.at("lqr");
    check_keys(l, "lqr", {"q_diag", "r", "dare_tol", "dare_max_iter", "v_min"});
    auto& lq = cfg.lqr;
    if (l.contains("q_diag")) {
      const json& q = l.at("q_diag");
      if (!q.is_array() || q.size() != 4) throw ConfigError("lqr.q_diag must be an array of 4 numbers");
      for (std::size_t i = 0; i < 4; ++i) {
        if (!q[i].is_number()) throw ConfigError("lqr.q_diag must be an array of 4 numbers");
        lq.q_diag[i] = q[i].get<double>();
      }
    }
    lq.r = get_number(l, "lqr", "r", lq.r);
    lq.dare_tol = get_number(l, "lqr", "dare_tol", lq.dare_tol);
    lq.dare_max_iter = static_cast<int>(get_u64(l, "lqr", "dare_max_iter",
                                                static_cast<std::uint64_t>(lq.dare_max_iter)));
    lq.v_min = get_number(l, "lqr", "v_min", lq.v_min);
    validate(lq);
  }

  if (doc.contains("pid")) {
    const json& p = doc.at("pid");
    check_keys(p, "pid", {"outer", "inner"});
    if (p.contains("outer")) cfg.pid.outer = parse_pid_gains(p.at("outer"), "pid.outer", cfg.pid.outer);
    if (p.contains("inner")) cfg.pid.inner = parse_pid_gains(p.at("inner"), "pid.inner", cfg.pid.inner);
    validate(cfg.pid);
  }

  if (doc.contains("compensation")) {
    const json& c = doc.at("compensation");
    check_keys(c, "compensation", {"threshold_m", "window_s", "a_min", "a_max", "enabled"});
    auto& cc = cfg.compensation;
    cc.threshold = get_number(c, "compensation", "threshold_m", cc.threshold);
    cc.window = get_number(c, "compensation", "window_s", cc.window);
    cc.a_min = get_number(c, "compensation", "a_min", cc.a_min);
    cc.a_max = get_number(c, "compensation", "a_max", cc.a_max);
    cfg.compensation_enabled = get_bool(c, "compensation", "enabled", cfg.compensation_enabled);
    validate(cc);
  }

  if (doc.contains("simulation")) {
    const json& s = doc.at("simulation");
    check_keys(s, "simulation",
               {"dt", "eps", "seed", "v_start", "duration_cap_s", "divergence_m"});
    auto& sc = cfg.simulation;
    sc.dt = get_number(s, "simulation", "dt", sc.dt);
    sc.eps = get_number(s, "simulation", "eps", sc.eps);
    sc.seed = get_u64(s, "simulation", "seed", sc.seed);
    if (s.contains("v_start") && !s.at("v_start").is_null())
      sc.v_start = get_number(s, "simulation", "v_start", 0.0);
    if (s.contains("duration_cap_s") && !s.at("duration_cap_s").is_null())
      sc.duration_cap_s = get_number(s, "simulation", "duration_cap_s", 0.0);
    sc.divergence_m = get_number(s, "simulation", "divergence_m", sc.divergence_m);
    validate(sc);
  }

  if (doc.contains("analysis")) {
    const json& a = doc.at("analysis");
    check_keys(a, "analysis", {"dt", "eps", "bands"});
    cfg.analysis.dt = get_number(a, "analysis", "dt", cfg.analysis.dt);
    cfg.analysis.eps = get_number(a, "analysis", "eps", cfg.analysis.eps);
    if (!(cfg.analysis.dt > 0.0)) throw ConfigError("analysis.dt must be > 0");
    if (!(cfg.analysis.eps >= 0.0)) throw ConfigError("analysis.eps must be >= 0");
    if (a.contains("bands")) {
      if (!a.at("bands").is_object()) throw ConfigError("analysis.bands must be an object");
      cfg.analysis.bands = parse_bands(a.at("bands"), "analysis.bands");
    }
  }

  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::json to_json(const RunConfig& cfg) {
  json doc;
  json alignment;
  if (cfg.alignment.centerline_path) alignment["centerline"] = *cfg.alignment.centerline_path;
  if (cfg.alignment.spec) {
    json segments = json::array();
    for (const auto& seg : cfg.alignment.spec->segments) {
      json s;
      s["kind"] = seg.kind == SegmentKind::Straight ? "straight"
                  : seg.kind == SegmentKind::Arc   ? "arc"
                                                   : "spiral";
      s["length"] = seg.length;
      s["radius"] = seg.radius;
      s["direction"] = seg.direction == TurnDirection::Left ? "left" : "right";
      segments.push_back(s);
    }
    alignment["segments"] = segments;
  }
  alignment["spacing"] = cfg.alignment.spacing;
  doc["alignment"] = alignment;

  doc["speed_profile"] = {{"v_desired", cfg.speed_profile.v_desired},
                          {"a_accel", cfg.speed_profile.a_accel},
                          {"a_decel", cfg.speed_profile.a_decel},
                          {"a_lat_max", cfg.speed_profile.a_lat_max},
                          {"noise_fraction", cfg.speed_profile.noise_fraction},
                          {"seed", cfg.speed_profile.seed},
                          {"v_start", cfg.speed_profile.v_start},
                          {"v_end", cfg.speed_profile.v_end}};
  doc["vehicle"] = {{"wheelbase", cfg.vehicle.wheelbase},
                    {"max_steer", cfg.vehicle.max_steer},
                    {"max_steer_rate", cfg.vehicle.max_steer_rate},
                    {"max_accel", cfg.vehicle.max_accel},
                    {"max_decel", cfg.vehicle.max_decel}};
  doc["lqr"] = {{"q_diag", cfg.lqr.q_diag},
                {"r", cfg.lqr.r},
                {"dare_tol", cfg.lqr.dare_tol},
                {"dare_max_iter", cfg.lqr.dare_max_iter},
                {"v_min", cfg.lqr.v_min}};
  doc["pid"] = {{"outer",
                 {{"kp", cfg.pid.outer.kp},
                  {"ki", cfg.pid.outer.ki},
                  {"kd", cfg.pid.outer.kd},
                  {"i_clamp", cfg.pid.outer.i_clamp}}},
                {"inner",
                 {{"kp", cfg.pid.inner.kp},
                  {"ki", cfg.pid.inner.ki},
                  {"kd", cfg.pid.inner.kd},
                  {"i_clamp", cfg.pid.inner.i_clamp}}}};
  doc["compensation"] = {{"threshold_m", cfg.compensation.threshold},
                         {"window_s", cfg.compensation.window},
                         {"a_min", cfg.compensation.a_min},
                         {"a_max", cfg.compensation.a_max},
                         {"enabled", cfg.compensation_enabled}};
  json sim = {{"dt", cfg.simulation.dt},
              {"eps", cfg.simulation.eps},
              {"seed", cfg.simulation.seed},
              {"divergence_m", cfg.simulation.divergence_m}};
  if (cfg.simulation.v_start) sim["v_start"] = *cfg.simulation.v_start;
  if (cfg.simulation.duration_cap_s) sim["duration_cap_s"] = *cfg.simulation.duration_cap_s;
  doc["simulation"] = sim;
  json bands = json::object();
  for (const auto& [name, band] : cfg.analysis.bands) bands[name] = {band.lo, band.hi};
  doc["analysis"] = {{"dt", cfg.analysis.dt}, {"eps", cfg.analysis.eps}, {"bands", bands}};
  return doc;
}

std::string config_hash(const RunConfig& cfg) {
  std::string dump = to_json(cfg).dump();
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

ControlConfig control_config(const RunConfig& cfg) {
  ControlConfig out;
  out.lqr = cfg.lqr;
  out.pid = cfg.pid;
  out.comp = cfg.compensation;
  out.comp_enabled = cfg.compensation_enabled;
  out.dt = cfg.simulation.dt;
  return out;
}

}  // namespace sttrack
