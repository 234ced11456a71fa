#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sttrack/config.hpp"
#include "sttrack/error_analysis.hpp"
#include "sttrack/errors.hpp"
#include "sttrack/simulation.hpp"
#include "sttrack/target_generator.hpp"
#include "sttrack/trajectory_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sttrack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitDivergence = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  bool no_compensation = false;
};

void write_json(const json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << "\n";
}

json channel_json(const ChannelSummary& ch) {
  json j = {{"max_abs", ch.max_abs}, {"rms", ch.rms}, {"mean", ch.mean}};
  if (ch.band) j["band"] = {ch.band->lo, ch.band->hi};
  if (ch.band_fraction) j["band_fraction"] = *ch.band_fraction;
  return j;
}

std::vector<CenterlinePoint> resolve_centerline(const RunConfig& cfg) {
  if (cfg.alignment.centerline_path) {
    std::vector<std::string> warnings;
    auto pts = load_centerline(*cfg.alignment.centerline_path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return pts;
  }
  if (cfg.alignment.spec) return synth_alignment(*cfg.alignment.spec, cfg.alignment.spacing);
  throw ConfigError("alignment: either centerline or segments is required");
}

int cmd_generate(const CommonOpts& opts) {
  RunConfig cfg = load_run_config(opts.config_path);
  if (opts.seed) cfg.speed_profile.seed = *opts.seed;

  auto centerline = resolve_centerline(cfg);
  auto profile = build_speed_profile(centerline, cfg.speed_profile);
  profile = apply_speed_noise(profile, cfg.speed_profile);
  Trajectory target = to_trajectory(centerline, profile);

  std::string hash = config_hash(cfg);
  fs::create_directories(opts.out_dir);
  fs::path csv = fs::path(opts.out_dir) / "target.csv";
  save_trajectory_csv(target, csv.string(),
                      {"config_hash: " + hash, "seed: " + std::to_string(cfg.speed_profile.seed)});

  json log = {{"command", "generate"},
              {"config", to_json(cfg)},
              {"config_hash", hash},
              {"points", target.size()},
              {"length_m", centerline_length(centerline)},
              {"duration_s", target.end_time() - target.start_time()},
              {"outputs", {{"target_csv", csv.string()}}}};
  write_json(log, fs::path(opts.out_dir) / "generate_log.json");

  std::cout << "resolved config (hash " << hash << "):\n" << to_json(cfg).dump(2) << "\n";
  std::cout << "seed: " << cfg.speed_profile.seed << "\n";
  std::cout << "wrote " << csv.string() << ": " << target.size() << " points, "
            << format_double(centerline_length(centerline)) << " m, "
            << format_double(target.end_time() - target.start_time()) << " s\n";
  return kExitOk;
}

int cmd_simulate(const std::string& target_path, const CommonOpts& opts) {
  RunConfig cfg = load_run_config(opts.config_path);
  if (opts.seed) cfg.simulation.seed = *opts.seed;
  if (opts.dt) cfg.simulation.dt = *opts.dt;
  if (opts.no_compensation) cfg.compensation_enabled = false;
  validate(cfg.simulation);

  Trajectory target = load_trajectory_csv(target_path);
  SimResult result = run_simulation(target, cfg.vehicle, control_config(cfg), cfg.simulation);

  std::string hash = config_hash(cfg);
  fs::create_directories(opts.out_dir);
  fs::path csv = fs::path(opts.out_dir) / "tracked.csv";
  save_trajectory_csv(result.tracked, csv.string(),
                      {"config_hash: " + hash, "target: " + target_path});

  const TrajectoryPoint& last = result.tracked.points.back();
  json log = {{"command", "simulate"},
              {"config", to_json(cfg)},
              {"config_hash", hash},
              {"target", target_path},
              {"compensation_enabled", cfg.compensation_enabled},
              {"ticks", result.ticks},
              {"duration_s", result.tracked.end_time() - result.tracked.start_time()},
              {"max_abs_dp_m", result.max_abs_dp},
              {"max_abs_dq_m", result.max_abs_dq},
              {"comp_episodes", result.comp_episodes},
              {"final_state",
               {{"x", last.x}, {"y", last.y}, {"v", last.v}, {"heading", last.heading}}},
              {"outputs", {{"tracked_csv", csv.string()}}}};
  write_json(log, fs::path(opts.out_dir) / "run_log.json");

  std::cout << "config hash: " << hash << "\n"
            << "ticks: " << result.ticks << " (dt=" << format_double(cfg.simulation.dt) << ")\n"
            << "max |dp|: " << format_double(result.max_abs_dp) << " m, max |dq|: "
            << format_double(result.max_abs_dq) << " m, episodes: " << result.comp_episodes
            << "\n"
            << "wrote " << csv.string() << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& target_path, const std::string& tracked_path,
                const CommonOpts& opts) {
  RunConfig cfg =
      opts.config_path.empty() ? default_run_config() : load_run_config(opts.config_path);
  if (opts.dt) cfg.analysis.dt = *opts.dt;

  Trajectory target = load_trajectory_csv(target_path);
  Trajectory tracked = load_trajectory_csv(tracked_path);

  ErrorSeries series = compute_errors(target, tracked, cfg.analysis.dt, cfg.analysis.eps);
  OffsetSeries offsets = offset_series(target, tracked, cfg.analysis.dt, cfg.analysis.eps);
  ErrorSummary summary = summarize(series, cfg.analysis.bands);
  EpisodeStats episodes = episode_stats(series, cfg.compensation.threshold);

  std::string hash = config_hash(cfg);
  fs::create_directories(opts.out_dir);
  fs::path out(opts.out_dir);
  std::vector<std::string> comments = {"config_hash: " + hash, "target: " + target_path,
                                       "tracked: " + tracked_path};
  save_errors_csv(series, target, (out / "errors.csv").string(), comments);
  save_offsets_csv(offsets, (out / "offsets.csv").string(), comments);
  save_pairing_csv(target, tracked, series, (out / "pairing.csv").string(), comments);

  json doc = {{"command", "analyze"},
              {"config", to_json(cfg)},
              {"config_hash", hash},
              {"target", target_path},
              {"tracked", tracked_path},
              {"samples", series.samples.size()},
              {"t_start", series.samples.front().t},
              {"t_end", series.samples.back().t},
              {"dt", cfg.analysis.dt},
              {"eps", cfg.analysis.eps},
              {"channels",
               {{"speed_error", channel_json(summary.speed)},
                {"heading_error", channel_json(summary.heading)},
                {"lateral_error", channel_json(summary.lateral)},
                {"leadlag_error", channel_json(summary.leadlag)}}},
              {"leadlag_episodes",
               {{"count", episodes.count},
                {"all_reentered", episodes.all_reentered},
                {"threshold_m", episodes.threshold}}}};
  write_json(doc, out / "summary.json");

  std::cout << "config hash: " << hash << "\n"
            << "samples: " << series.samples.size() << " over ["
            << format_double(series.samples.front().t) << ", "
            << format_double(series.samples.back().t) << "] s\n"
            << "max |speed_error|: " << format_double(summary.speed.max_abs) << " m/s\n"
            << "max |heading_error|: " << format_double(summary.heading.max_abs) << " rad\n"
            << "max |lateral_error|: " << format_double(summary.lateral.max_abs) << " m\n"
            << "max |leadlag_error|: " << format_double(summary.leadlag.max_abs) << " m\n"
            << "wrote errors.csv, offsets.csv, pairing.csv, summary.json in " << opts.out_dir
            << "\n";
  return kExitOk;
}

void print_channel(std::ostream& os, const std::string& name, const std::string& unit,
                   const json& ch) {
  os << "channel " << name << " [" << unit << "]:\n";
  os << "  max|.| " << ch.at("max_abs").dump() << "  rms " << ch.at("rms").dump() << "  mean "
     << ch.at("mean").dump() << "\n";
  if (ch.contains("band")) {
    double frac = ch.at("band_fraction").get<double>();
    char pct[16];
    std::snprintf(pct, sizeof(pct), "%.1f", frac * 100.0);
    os << "  band [" << ch.at("band")[0].dump() << ", " << ch.at("band")[1].dump() << "]: " << pct
       << "% within\n";
  }
}

int cmd_report(const std::string& analysis_dir) {
  fs::path dir(analysis_dir);
  std::vector<std::string> missing;
  for (const char* name : {"summary.json", "errors.csv"})
    if (!fs::exists(dir / name)) missing.push_back(name);
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw DataError("analysis outputs missing in " + analysis_dir + ": " + list);
  }

  std::ifstream in(dir / "summary.json");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError((dir / "summary.json").string() + ": " + e.what());
  }

  std::ostringstream os;
  os << "== tracking error report ==\n";
  os << "config hash: " << doc.at("config_hash").get<std::string>() << "\n";
  os << "samples: " << doc.at("samples").dump() << " over [" << doc.at("t_start").dump() << ", "
     << doc.at("t_end").dump() << "] s (dt=" << doc.at("dt").dump() << ")\n\n";
  const json& ch = doc.at("channels");
  print_channel(os, "speed_error", "m/s", ch.at("speed_error"));
  print_channel(os, "heading_error", "rad", ch.at("heading_error"));
  print_channel(os, "lateral_error", "m", ch.at("lateral_error"));
  print_channel(os, "leadlag_error", "m", ch.at("leadlag_error"));
  const json& ep = doc.at("leadlag_episodes");
  os << "\nleadlag episodes beyond +-" << ep.at("threshold_m").dump() << " m: "
     << ep.at("count").dump()
     << ", re-entered after each: " << (ep.at("all_reentered").get<bool>() ? "yes" : "no") << "\n";

  std::string text = os.str();
  std::cout << text;
  std::ofstream out(dir / "report.txt", std::ios::binary);
  if (!out) throw DataError("cannot open " + (dir / "report.txt").string() + " for writing");
  out << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sttrack: spatiotemporal trajectory tracking simulator and analysis toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string target_path, tracked_path, analysis_dir;

  auto* generate = app.add_subcommand("generate", "Build a target trajectory from an alignment");
  generate->add_option("--config", opts.config_path, "Run configuration (JSON)")->required();
  generate->add_option("--out", opts.out_dir, "Output directory")->required();
  generate->add_option("--seed", opts.seed, "Override speed_profile.seed");

  auto* simulate = app.add_subcommand("simulate", "Closed-loop tracking of a target trajectory");
  simulate->add_option("target", target_path, "Target trajectory CSV")->required();
  simulate->add_option("--config", opts.config_path, "Run configuration (JSON)")->required();
  simulate->add_option("--out", opts.out_dir, "Output directory")->required();
  simulate->add_option("--seed", opts.seed, "Override simulation.seed");
  simulate->add_option("--dt", opts.dt, "Override simulation.dt (seconds)");
  simulate->add_flag("--no-compensation", opts.no_compensation,
                     "Disable the acceleration compensation term");

  auto* analyze = app.add_subcommand("analyze", "Compute tracking errors for a trajectory pair");
  analyze->add_option("target", target_path, "Target trajectory CSV")->required();
  analyze->add_option("tracked", tracked_path, "Tracked trajectory CSV")->required();
  analyze->add_option("--out", opts.out_dir, "Output directory")->required();
  analyze->add_option("--config", opts.config_path, "Run configuration (JSON)");
  analyze->add_option("--dt", opts.dt, "Override analysis.dt (seconds)");

  auto* report = app.add_subcommand("report", "Render a consolidated report from analyze outputs");
  report->add_option("dir", analysis_dir, "Directory with analyze outputs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (generate->parsed()) return cmd_generate(opts);
    if (simulate->parsed()) return cmd_simulate(target_path, opts);
    if (analyze->parsed()) return cmd_analyze(target_path, tracked_path, opts);
    if (report->parsed()) return cmd_report(analysis_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DivergenceError& e) {
    std::cerr << "runtime divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const DataError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
