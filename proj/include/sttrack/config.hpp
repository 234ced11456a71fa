#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "sttrack/controllers.hpp"
#include "sttrack/error_analysis.hpp"
#include "sttrack/simulation.hpp"
#include "sttrack/target_generator.hpp"
#include "sttrack/vehicle.hpp"

namespace sttrack {

struct AlignmentConfig {
  std::optional<std::string> centerline_path;  // mutually exclusive with spec
  std::optional<AlignmentSpec> spec;
  double spacing = 1.0;
};

struct AnalysisConfig {
  double dt = 0.01;
  double eps = 0.01;
  std::map<std::string, Band> bands;  // seeded with reference comparison bands
};

// Whole-run configuration: one JSON document with one section per module.
struct RunConfig {
  AlignmentConfig alignment;
  SpeedProfileConfig speed_profile;
  VehicleParams vehicle;
  LqrConfig lqr;
  DualPidConfig pid;
  CompensationConfig compensation;
  bool compensation_enabled = true;
  SimulationConfig simulation;
  AnalysisConfig analysis;
};

// Defaults, with analysis bands seeded for comparison reports.
RunConfig default_run_config();

// Strict parse: unknown keys are rejected with their full path; values
// are validated per module. Missing sections/keys keep defaults.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

// Full resolved dump; key order is deterministic.
nlohmann::json to_json(const RunConfig& cfg);

// FNV-1a 64 over the canonical dump, as a 16-digit hex string.
std::string config_hash(const RunConfig& cfg);

ControlConfig control_config(const RunConfig& cfg);

}  // namespace sttrack
