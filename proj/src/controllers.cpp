#include "sttrack/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "sttrack/errors.hpp"
#include "sttrack/leadlag.hpp"

namespace sttrack {

void validate(const LqrConfig& cfg) {
  for (double q : cfg.q_diag)
    if (!(q > 0.0)) throw ConfigError("lqr.q_diag entries must be > 0");
  if (!(cfg.r > 0.0)) throw ConfigError("lqr.r must be > 0");
  if (!(cfg.dare_tol > 0.0)) throw ConfigError("lqr.dare_tol must be > 0");
  if (cfg.dare_max_iter < 1) throw ConfigError("lqr.dare_max_iter must be >= 1");
  if (!(cfg.v_min > 0.0)) throw ConfigError("lqr.v_min must be > 0");
}

void validate(const DualPidConfig& cfg) {
  for (const PidGains* g : {&cfg.outer, &cfg.inner}) {
    if (g->kp < 0.0 || g->ki < 0.0 || g->kd < 0.0)
      throw ConfigError("pid gains must be >= 0");
    if (!(g->i_clamp > 0.0)) throw ConfigError("pid integrator clamp must be > 0");
  }
}

namespace {
Eigen::MatrixXd dare_rhs(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                         const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                         const Eigen::MatrixXd& P) {
  Eigen::MatrixXd BtPA = B.transpose() * P * A;
  Eigen::MatrixXd gain_den = R + B.transpose() * P * B;
  return A.transpose() * P * A - BtPA.transpose() * gain_den.inverse() * BtPA + Q;
}
}  // namespace

DareSolution solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R, const LqrConfig& cfg,
                        const Eigen::MatrixXd* warm_start) {
  Eigen::MatrixXd P = (warm_start && warm_start->rows() == A.rows()) ? *warm_start : Q;
  std::deque<double> history;
  for (int it = 0; it < cfg.dare_max_iter; ++it) {
    Eigen::MatrixXd next = dare_rhs(A, B, Q, R, P);
    double residual = (next - P).cwiseAbs().maxCoeff();
    if (residual <= cfg.dare_tol) {
      DareSolution sol;
      sol.P = P;
      sol.K = (R + B.transpose() * P * B).inverse() * (B.transpose() * P * A);
      sol.iterations = it;
      sol.residual = residual;
      return sol;
    }
    history.push_back(residual);
    if (history.size() > 8) history.pop_front();
    P = next;
  }
  std::ostringstream msg;
  msg << "DARE fixed-point iteration did not converge after " << cfg.dare_max_iter
      << " iterations; trailing residuals:";
  for (double r : history) msg << " " << r;
  throw DivergenceError(msg.str());
}

void lateral_error_model(double v, double wheelbase, double dt, const LqrConfig& cfg,
                         Eigen::Matrix4d& A, Eigen::Vector4d& B) {
  double ve = std::max(v, cfg.v_min);
  A << 1.0, dt, 0.0, 0.0,
       0.0, 0.0, ve, 0.0,
       0.0, 0.0, 1.0, dt,
       0.0, 0.0, 0.0, 0.0;
  B << 0.0, 0.0, 0.0, ve / wheelbase;
}

double lateral_control(const LateralErrorState& err, const Eigen::RowVector4d& K,
                       double max_steer) {
  double steer = -(K * err.vector())(0);
  return std::clamp(steer, -max_steer, max_steer);
}

double pid_step(const PidGains& gains, double error, double dt, PidState& state) {
  state.integral += error * dt;
  if (gains.ki > 0.0) {
    double bound = gains.i_clamp / gains.ki;
    state.integral = std::clamp(state.integral, -bound, bound);
  }
  double derivative = state.has_prev ? (error - state.prev_error) / dt : 0.0;
  state.prev_error = error;
  state.has_prev = true;
  return gains.kp * error + gains.ki * state.integral + gains.kd * derivative;
}

double longitudinal_control(const DualPidConfig& cfg, double station_err, double v_target,
                            double v_actual, double dt, DualPidState& state) {
  if (!(dt > 0.0)) throw std::invalid_argument("longitudinal_control: dt must be > 0");
  double speed_correction = pid_step(cfg.outer, station_err, dt, state.outer);
  double speed_err = (v_target + speed_correction) - v_actual;
  return pid_step(cfg.inner, speed_err, dt, state.inner);
}

ControlInput control_tick(const Trajectory& target, const VehicleState& state, double t,
                          const ControlConfig& cfg, const VehicleParams& vehicle,
                          ControllerState& cs, TickDebug* debug) {
  TrajectoryPoint target_pt = sample(target, t);
  OffsetFrame frame = offset_frame(target, {t, state.x, state.y, state.v, state.heading}, t);

  LateralErrorState err;
  err.e = frame.dq;
  err.theta_e = wrap_angle(state.heading - target_pt.heading);
  if (cs.has_prev_lat) {
    err.e_dot = (err.e - cs.prev_e) / cfg.dt;
    err.theta_e_dot = wrap_angle(err.theta_e - cs.prev_theta_e) / cfg.dt;
  }
  cs.prev_e = err.e;
  cs.prev_theta_e = err.theta_e;
  cs.has_prev_lat = true;

  Eigen::Matrix4d A;
  Eigen::Vector4d B;
  lateral_error_model(state.v, vehicle.wheelbase, cfg.dt, cfg.lqr, A, B);
  Eigen::Matrix4d Q = Eigen::Vector4d(cfg.lqr.q_diag[0], cfg.lqr.q_diag[1], cfg.lqr.q_diag[2],
                                      cfg.lqr.q_diag[3])
                          .asDiagonal();
  Eigen::MatrixXd R(1, 1);
  R(0, 0) = cfg.lqr.r;
  DareSolution sol = solve_dare(A, B, Q, R, cfg.lqr,
                                cs.dare_warm.size() > 0 ? &cs.dare_warm : nullptr);
  cs.dare_warm = sol.P;

  double steer = lateral_control(err, sol.K.row(0), vehicle.max_steer);

  double accel_pid =
      longitudinal_control(cfg.pid, -frame.dp, target_pt.v, state.v, cfg.dt, cs.pid);
  double accel_comp = cfg.comp_enabled ? compensation_accel(frame.dp, cfg.comp) : 0.0;

  if (debug) {
    debug->dp = frame.dp;
    debug->dq = frame.dq;
    debug->theta_e = err.theta_e;
    debug->accel_pid = accel_pid;
    debug->accel_comp = accel_comp;
    debug->steer = steer;
  }
  return {accel_pid + accel_comp, steer};
}

}  // namespace sttrack
