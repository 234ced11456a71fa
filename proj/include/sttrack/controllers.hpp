#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "sttrack/compensation.hpp"
#include "sttrack/geometry.hpp"
#include "sttrack/vehicle.hpp"

namespace sttrack {

// Path-tracking lateral error state: lateral offset, its rate, heading
// error and its rate (all relative to the target's tangent frame).
struct LateralErrorState {
  double e = 0.0;            // meters, + = left of path
  double e_dot = 0.0;        // m/s
  double theta_e = 0.0;      // radians, wrapped
  double theta_e_dot = 0.0;  // rad/s

  Eigen::Vector4d vector() const { return {e, e_dot, theta_e, theta_e_dot}; }
};

struct LqrConfig {
  std::array<double, 4> q_diag{1.0, 0.1, 1.0, 0.1};
  double r = 10.0;
  double dare_tol = 1e-9;
  int dare_max_iter = 10000;
  double v_min = 2.0;  // m/s, linearization speed floor
};

void validate(const LqrConfig& cfg);

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double i_clamp = 1.0;  // bound on |ki * integral|, output units
};

// Cascaded longitudinal control: outer loop maps station error (m) to a
// speed correction (m/s), inner loop maps speed error (m/s) to
// acceleration (m/s^2).
struct DualPidConfig {
  PidGains outer{0.8, 0.0, 0.1, 5.0};
  PidGains inner{1.2, 0.1, 0.0, 2.0};
};

void validate(const DualPidConfig& cfg);

struct PidState {
  double integral = 0.0;
  double prev_error = 0.0;
  bool has_prev = false;
};

struct DualPidState {
  PidState outer;
  PidState inner;
};

struct DareSolution {
  Eigen::MatrixXd P;
  Eigen::MatrixXd K;
  int iterations = 0;
  double residual = 0.0;
};

// Fixed-point DARE solve from P0 = Q (or `warm_start`):
//   P <- A'PA - A'PB (R + B'PB)^-1 B'PA + Q
// until the residual max-norm is <= cfg.dare_tol. The returned P has a
// verified residual; K = (R + B'PB)^-1 B'PA. Throws DivergenceError with
// the trailing residual history on non-convergence.
DareSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R, const LqrConfig& cfg,
                        const Eigen::MatrixXd* warm_start = nullptr);

// Discrete kinematic lateral error model at speed v (floored at
// cfg.v_min), states [e, e_dot, theta_e, theta_e_dot], input = steer.
void lateral_error_model(double v, double wheelbase, double dt, const LqrConfig& cfg,
                         Eigen::Matrix4d& A, Eigen::Vector4d& B);

// steer = -K x, saturated to +-max_steer.
double lateral_control(const LateralErrorState& err, const Eigen::RowVector4d& K,
                       double max_steer);

double pid_step(const PidGains& gains, double error, double dt, PidState& state);

// Outer PID on station error -> speed correction; inner PID on
// (v_target + correction) - v_actual -> acceleration.
double longitudinal_control(const DualPidConfig& cfg, double station_err, double v_target,
                            double v_actual, double dt, DualPidState& state);

struct ControlConfig {
  LqrConfig lqr;
  DualPidConfig pid;
  CompensationConfig comp;
  bool comp_enabled = true;
  double dt = 0.01;
};

struct ControllerState {
  DualPidState pid;
  double prev_e = 0.0;
  double prev_theta_e = 0.0;
  bool has_prev_lat = false;
  double prev_steer = 0.0;
  bool has_prev_steer = false;
  Eigen::MatrixXd dare_warm;  // previous P, speeds up the per-tick solve
};

// Per-tick diagnostics surfaced by control_tick.
struct TickDebug {
  double dp = 0.0;
  double dq = 0.0;
  double theta_e = 0.0;
  double accel_pid = 0.0;
  double accel_comp = 0.0;
  double steer = 0.0;
};

// One tick of the decoupled stack: LQR steering on the lateral error
// state, dual-PID acceleration on station/speed errors, plus the
// threshold-gated compensation term.
ControlInput control_tick(const Trajectory& target, const VehicleState& state, double t,
                          const ControlConfig& cfg, const VehicleParams& vehicle,
                          ControllerState& cs, TickDebug* debug = nullptr);

}  // namespace sttrack
