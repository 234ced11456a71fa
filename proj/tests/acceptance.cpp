// Acceptance suite: runs every acceptance criterion end to end (library
// level plus the real CLI binary) and prints one PASS/FAIL line each.
//
// usage: sttrack_acceptance <cli_path> <configs_dir> <scratch_dir>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sttrack/compensation.hpp"
#include "sttrack/controllers.hpp"
#include "sttrack/error_analysis.hpp"
#include "sttrack/errors.hpp"
#include "sttrack/geometry.hpp"
#include "sttrack/leadlag.hpp"
#include "sttrack/simulation.hpp"
#include "sttrack/target_generator.hpp"
#include "sttrack/trajectory_io.hpp"
#include "sttrack/vehicle.hpp"

using namespace sttrack;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!ok) ++g_failures;
}

double run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
  std::string cmd = "\"" + cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  auto start = std::chrono::steady_clock::now();
  int rc = std::system(cmd.c_str());
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (rc != 0) {
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    throw std::runtime_error("CLI failed (" + std::to_string(rc) + "): " + cmd + "\n" + ss.str());
  }
  return seconds;
}

bool files_identical(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return fa && fb && sa.str() == sb.str();
}

std::string fmt(double v) { return format_double(v); }

// --- criterion 1: closure identity of the compensation formula ---------

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> mag(0.5 + 1e-9, 80.0);
  std::uniform_real_distribution<double> window(0.2, 5.0);
  std::bernoulli_distribution flip;
  CompensationConfig cfg;
  cfg.a_min = -1e300;
  cfg.a_max = 1e300;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double dp = mag(rng) * (flip(rng) ? 1.0 : -1.0);
    cfg.window = window(rng);
    double a = compensation_accel(dp, cfg);
    double landing = dp + 0.5 * a * cfg.window * cfg.window;
    worst = std::max(worst, std::abs(landing - (dp > 0 ? 0.5 : -0.5)));
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, worst <= 1e-9 && seconds < 1.0,
         "closure identity: 1000 random (dp, T_w) land on the +-0.5 boundary, worst " +
             fmt(worst) + " m, " + fmt(seconds) + " s");
}

// --- criterion 2: closed-loop convergence of per-tick compensation -----

void criterion_2() {
  CompensationConfig comp;  // threshold 0.5, T_w = 1.0
  DualPidConfig pid;
  DualPidState pid_state;
  const double dt = 0.01, v_target = 20.0;
  double s_target = 0.0, s = 2.0, v = v_target;
  double reach_time = -1.0, worst_after = 0.0;
  for (double t = 0.0; t < 10.0; t += dt) {
    double dp = s - s_target;
    double accel =
        longitudinal_control(pid, -dp, v_target, v, dt, pid_state) + compensation_accel(dp, comp);
    v = std::max(0.0, v + accel * dt);
    s += v * dt;
    s_target += v_target * dt;
    if (reach_time < 0.0 && std::abs(dp) <= 0.55) reach_time = t;
    if (t >= 3.0) worst_after = std::max(worst_after, std::abs(dp));
  }
  bool ok = reach_time >= 0.0 && reach_time <= 3.0 && worst_after <= 0.55;
  report(2, ok,
         "closed-loop convergence from dp0=2.0 m: |dp| <= 0.55 at t=" + fmt(reach_time) +
             " s, worst after 3 s " + fmt(worst_after) + " m");
}

// --- criteria 3/4/9/10 share the CLI pipeline --------------------------

struct PipelineRun {
  Trajectory target;
  Trajectory tracked;
  ErrorSeries errors;
  double simulate_seconds = 0.0;
};

PipelineRun run_pipeline(const std::string& cli, const fs::path& config, const fs::path& dir,
                         bool compensation) {
  fs::create_directories(dir);
  run_cli(cli, "generate --config \"" + config.string() + "\" --out \"" + dir.string() + "\"",
          dir / "generate.log");
  std::string sim_args = "simulate \"" + (dir / "target.csv").string() + "\" --config \"" +
                         config.string() + "\" --out \"" + dir.string() + "\"";
  if (!compensation) sim_args += " --no-compensation";
  double sim_seconds = run_cli(cli, sim_args, dir / "simulate.log");
  run_cli(cli,
          "analyze \"" + (dir / "target.csv").string() + "\" \"" + (dir / "tracked.csv").string() +
              "\" --config \"" + config.string() + "\" --out \"" + (dir / "analysis").string() +
              "\"",
          dir / "analyze.log");
  run_cli(cli, "report \"" + (dir / "analysis").string() + "\"", dir / "report.log");

  PipelineRun run;
  run.target = load_trajectory_csv((dir / "target.csv").string());
  run.tracked = load_trajectory_csv((dir / "tracked.csv").string());
  run.errors = load_errors_csv((dir / "analysis" / "errors.csv").string());
  run.simulate_seconds = sim_seconds;
  return run;
}

void criterion_3(const PipelineRun& run) {
  ErrorSummary summary = summarize(run.errors);
  EpisodeStats episodes = episode_stats(run.errors, 0.5);
  bool ok = summary.leadlag.max_abs <= 1.5 && episodes.all_reentered &&
            run.simulate_seconds < 5.0 && !run.errors.samples.empty();
  report(3, ok,
         "surrogate 1594 m run at 100 km/h: max |leadlag| " + fmt(summary.leadlag.max_abs) +
             " m (<= 1.5), " + std::to_string(episodes.count) +
             " episodes all re-entering the +-0.5 m band: " +
             (episodes.all_reentered ? "yes" : "no") + ", simulate " + fmt(run.simulate_seconds) +
             " s (< 5)");
}

void criterion_4(const PipelineRun& with, const PipelineRun& without) {
  double max_with = summarize(with.errors).leadlag.max_abs;
  double max_without = summarize(without.errors).leadlag.max_abs;
  report(4, max_without > max_with,
         "ablation --no-compensation: max |leadlag| " + fmt(max_without) + " m > " +
             fmt(max_with) + " m (compensated)");
}

void criterion_5() {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  std::uniform_real_distribution<double> speed(1.0, 30.0);
  std::uniform_real_distribution<double> tau_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> origin(-2000.0, 2000.0);
  double worst = 0.0;
  bool classes_ok = true;
  for (int k = 0; k < 1000; ++k) {
    double phi = angle(rng), v = speed(rng), tau = tau_dist(rng);
    double c = std::cos(phi), s = std::sin(phi);
    Vec2 o{origin(rng), origin(rng)};
    std::vector<TrajectoryPoint> tp, rp;
    for (int i = 0; i <= 100; ++i) {
      double t = 0.1 * i;
      tp.push_back({t, o.x + v * t * c, o.y + v * t * s, v, wrap_angle(phi)});
      double tr = t - tau;  // tracked(t) = target(t + tau)
      rp.push_back({tr, o.x + v * t * c, o.y + v * t * s, v, wrap_angle(phi)});
    }
    Trajectory target = make_trajectory(std::move(tp));
    Trajectory tracked = make_trajectory(std::move(rp));
    double t0 = std::max(target.start_time(), tracked.start_time()) + 1.0;
    double dp = longitudinal_offset(target, sample(tracked, t0), t0);
    worst = std::max(worst, std::abs(dp - v * tau));
    auto [lon, lat] = classify(dp, 0.0, 0.01);
    if (std::abs(dp) > 0.01) {
      if (lon != (dp > 0 ? LongitudinalClass::Lead : LongitudinalClass::Lag)) classes_ok = false;
    }
  }
  report(5, worst <= 1e-9 && classes_ok,
         "lead/lag oracle: 1000 straight-line pairs, |dp - v*tau| worst " + fmt(worst) +
             " m, classification matches the sign rule");
}

void criterion_6(const PipelineRun& run) {
  double worst_norm = 0.0, worst_decomp = 0.0;
  bool ortho_exact = true;
  double t_start = std::max(run.target.start_time(), run.tracked.start_time());
  double t_end = std::min(run.target.end_time(), run.tracked.end_time());
  for (double t = t_start; t <= t_end; t += 0.05) {
    TrajectoryPoint pt = sample(run.tracked, t);
    OffsetFrame f = offset_frame(run.target, pt, t);
    worst_norm = std::max(worst_norm,
                          std::abs(f.ur.ux * f.ur.ux + f.ur.uy * f.ur.uy - 1.0));
    if (f.ur.dot(f.un.vec()) != 0.0) ortho_exact = false;
    Vec2 back = f.ur.vec() * f.dp + f.un.vec() * f.dq;
    worst_decomp = std::max({worst_decomp, std::abs(back.x - f.pp.x), std::abs(back.y - f.pp.y)});
  }
  bool ok = worst_norm <= 1e-12 && ortho_exact && worst_decomp <= 1e-9;
  report(6, ok,
         "geometry invariants on the acceptance run: |u|^2-1 worst " + fmt(worst_norm) +
             ", Ur.Un exactly 0: " + (ortho_exact ? "yes" : "no") + ", decomposition worst " +
             fmt(worst_decomp) + " m");
}

void criterion_7() {
  LqrConfig cfg;
  cfg.dare_tol = 1e-12;
  Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  DareSolution scalar = solve_dare(one, one, one, one, cfg);
  double scalar_err = std::abs(scalar.P(0, 0) - (1.0 + std::sqrt(5.0)) / 2.0);

  LqrConfig lat_cfg;
  Eigen::Matrix4d Q = Eigen::Vector4d(lat_cfg.q_diag[0], lat_cfg.q_diag[1], lat_cfg.q_diag[2],
                                      lat_cfg.q_diag[3])
                          .asDiagonal();
  Eigen::MatrixXd R = Eigen::MatrixXd::Constant(1, 1, lat_cfg.r);
  double worst_residual = 0.0, worst_rho = 0.0;
  for (double v : {5.0, 15.0, 30.0}) {
    Eigen::Matrix4d A;
    Eigen::Vector4d B;
    lateral_error_model(v, 2.7, 0.01, lat_cfg, A, B);
    DareSolution sol = solve_dare(A, B, Q, R, lat_cfg);
    Eigen::MatrixXd rhs = A.transpose() * sol.P * A -
                          A.transpose() * sol.P * B *
                              (R + B.transpose() * sol.P * B).inverse() * B.transpose() * sol.P *
                              A +
                          Q;
    worst_residual = std::max(worst_residual, (sol.P - rhs).cwiseAbs().maxCoeff());
    worst_rho = std::max(worst_rho,
                         (A - B * sol.K).eigenvalues().cwiseAbs().maxCoeff());
  }
  bool ok = scalar_err <= 1e-10 && worst_residual <= 1e-9 && worst_rho < 1.0;
  report(7, ok,
         "DARE: scalar |P - golden ratio| " + fmt(scalar_err) + ", 4x4 residual worst " +
             fmt(worst_residual) + ", closed-loop spectral radius worst " + fmt(worst_rho));
}

void criterion_8() {
  VehicleParams params;
  double steer = 0.1;
  double r_expected = params.wheelbase / std::tan(steer);
  VehicleState s{0.0, 0.0, 0.0, 10.0};
  double lap = 2.0 * 3.14159265358979323846 * r_expected / s.v;
  int n = static_cast<int>(lap / 0.01) + 1;
  double worst_rel = 0.0;
  for (int i = 0; i < n; ++i) {
    s = step(s, {0.0, steer}, params, 0.01);
    double r = std::hypot(s.x, s.y - r_expected);
    worst_rel = std::max(worst_rel, std::abs(r - r_expected) / r_expected);
  }

  auto final_pos = [&](double dt) {
    VehicleState st{0.0, 0.0, 0.0, 10.0};
    int steps = static_cast<int>(std::round(1.0 / dt));
    for (int i = 0; i < steps; ++i) st = step(st, {0.5, 0.1}, params, dt);
    return Vec2{st.x, st.y};
  };
  Vec2 a = final_pos(0.1), b = final_pos(0.05), c = final_pos(0.025);
  double ratio = (a - b).norm() / (b - c).norm();

  bool ok = worst_rel < 0.001 && ratio >= 14.0 && ratio <= 18.0;
  report(8, ok,
         "vehicle model: turning-radius deviation " + fmt(worst_rel * 100) +
             " % of wheelbase/tan(steer), RK4 Richardson ratio " + fmt(ratio));
}

void criterion_9(const PipelineRun& run) {
  std::map<std::string, Band> bands{{"speed", {-0.1, 0.5}}};
  ErrorSummary summary = summarize(run.errors, bands);
  double occupancy = summary.speed.band_fraction.value_or(0.0);
  bool ok = occupancy >= 0.80;
  report(9, ok,
         "speed_error band [-0.1, 0.5] m/s occupancy " + fmt(occupancy * 100) +
             " % (>= 80 required); heading bounded at max |" + fmt(summary.heading.max_abs) +
             "| rad, lateral bounded at max |" + fmt(summary.lateral.max_abs) + "| m");
}

void criterion_10(const std::string& cli, const fs::path& config, const fs::path& scratch,
                  const PipelineRun& first) {
  PipelineRun rerun = run_pipeline(cli, config, scratch / "rerun", true);
  bool target_same =
      files_identical(scratch / "run" / "target.csv", scratch / "rerun" / "target.csv");
  bool tracked_same =
      files_identical(scratch / "run" / "tracked.csv", scratch / "rerun" / "tracked.csv");

  // Export -> import -> export must reproduce the bytes.
  fs::path copy = scratch / "roundtrip.csv";
  save_trajectory_csv(first.tracked, copy.string());
  Trajectory reloaded = load_trajectory_csv(copy.string());
  bool lossless = reloaded.size() == first.tracked.size();
  if (lossless)
    for (std::size_t i = 0; i < reloaded.size(); ++i) {
      const auto& p = reloaded.points[i];
      const auto& q = first.tracked.points[i];
      if (p.t != q.t || p.x != q.x || p.y != q.y || p.v != q.v || p.heading != q.heading) {
        lossless = false;
        break;
      }
    }
  fs::path copy2 = scratch / "roundtrip2.csv";
  save_trajectory_csv(reloaded, copy2.string());
  lossless = lossless && files_identical(copy, copy2);

  report(10, target_same && tracked_same && lossless,
         std::string("determinism: rerun artifacts bit-identical (target ") +
             (target_same ? "yes" : "NO") + ", tracked " + (tracked_same ? "yes" : "NO") +
             "), CSV export/import round-trip lossless: " + (lossless ? "yes" : "no"));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: sttrack_acceptance <cli_path> <configs_dir> <scratch_dir>\n";
    return 2;
  }
  std::string cli = argv[1];
  fs::path configs = argv[2];
  fs::path scratch = argv[3];
  fs::path scenario = configs / "highway_1594m.json";

  try {
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    criterion_1();
    criterion_2();

    PipelineRun run = run_pipeline(cli, scenario, scratch / "run", true);
    PipelineRun ablation = run_pipeline(cli, scenario, scratch / "nocomp", false);

    criterion_3(run);
    criterion_4(run, ablation);
    criterion_5();
    criterion_6(run);
    criterion_7();
    criterion_8();
    criterion_9(run);
    criterion_10(cli, scenario, scratch, run);
  } catch (const std::exception& e) {
    std::cerr << "acceptance harness error: " << e.what() << "\n";
    return 2;
  }

  if (g_failures > 0) {
    std::printf("%d criterion(s) failing\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria pass\n");
  return 0;
}
