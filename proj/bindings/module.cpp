#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sttrack/compensation.hpp"
#include "sttrack/config.hpp"
#include "sttrack/controllers.hpp"
#include "sttrack/error_analysis.hpp"
#include "sttrack/errors.hpp"
#include "sttrack/geometry.hpp"
#include "sttrack/leadlag.hpp"
#include "sttrack/simulation.hpp"
#include "sttrack/target_generator.hpp"
#include "sttrack/trajectory_io.hpp"
#include "sttrack/vehicle.hpp"

namespace py = pybind11;
using namespace sttrack;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spatiotemporal trajectory tracking: lead/lag offsets, acceleration "
            "compensation, LQR + dual-PID tracking simulation and error analysis.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  // geometry
  py::class_<Vec2>(m, "Vec2")
      .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def("dot", &Vec2::dot)
      .def("cross", &Vec2::cross)
      .def("norm", &Vec2::norm)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + format_double(v.x) + ", " + format_double(v.y) + ")";
      });

  py::class_<UnitVec2>(m, "UnitVec2")
      .def_readonly("ux", &UnitVec2::ux)
      .def_readonly("uy", &UnitVec2::uy)
      .def("__repr__", [](const UnitVec2& u) {
        return "UnitVec2(" + format_double(u.ux) + ", " + format_double(u.uy) + ")";
      });

  py::class_<TrajectoryPoint>(m, "TrajectoryPoint")
      .def(py::init<double, double, double, double, double>(), py::arg("t") = 0.0,
           py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("v") = 0.0, py::arg("heading") = 0.0)
      .def_readwrite("t", &TrajectoryPoint::t)
      .def_readwrite("x", &TrajectoryPoint::x)
      .def_readwrite("y", &TrajectoryPoint::y)
      .def_readwrite("v", &TrajectoryPoint::v)
      .def_readwrite("heading", &TrajectoryPoint::heading);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init([](std::vector<TrajectoryPoint> pts) { return make_trajectory(std::move(pts)); }),
           py::arg("points"))
      .def_readwrite("points", &Trajectory::points)
      .def("start_time", &Trajectory::start_time)
      .def("end_time", &Trajectory::end_time)
      .def("__len__", &Trajectory::size);

  m.def("wrap_angle", &wrap_angle, py::arg("angle"));
  m.def("sample", &sample, py::arg("trajectory"), py::arg("t"));
  m.def("tangent_unit", &tangent_unit, py::arg("trajectory"), py::arg("t0"));
  m.def("normal_unit", &normal_unit, py::arg("u"));
  m.def("curvature_at", &curvature_at, py::arg("trajectory"), py::arg("index"));

  // leadlag
  py::enum_<LongitudinalClass>(m, "LongitudinalClass")
      .value("Lead", LongitudinalClass::Lead)
      .value("Lag", LongitudinalClass::Lag)
      .value("OnPoint", LongitudinalClass::OnPoint);
  py::enum_<LateralClass>(m, "LateralClass")
      .value("Left", LateralClass::Left)
      .value("Right", LateralClass::Right)
      .value("OnLine", LateralClass::OnLine);

  py::class_<OffsetSample>(m, "OffsetSample")
      .def_readonly("t", &OffsetSample::t)
      .def_readonly("dp", &OffsetSample::dp)
      .def_readonly("dq", &OffsetSample::dq)
      .def_readonly("lon", &OffsetSample::lon)
      .def_readonly("lat", &OffsetSample::lat);

  py::class_<OffsetSeries>(m, "OffsetSeries")
      .def_readonly("samples", &OffsetSeries::samples)
      .def_readonly("eps", &OffsetSeries::eps);

  m.def("longitudinal_offset", &longitudinal_offset, py::arg("target"), py::arg("tracked_pt"),
        py::arg("t0"));
  m.def("lateral_offset", &lateral_offset, py::arg("target"), py::arg("tracked_pt"),
        py::arg("t0"));
  m.def("classify", &classify, py::arg("dp"), py::arg("dq"), py::arg("eps"));
  m.def("offset_series", &offset_series, py::arg("target"), py::arg("tracked"),
        py::arg("dt") = 0.01, py::arg("eps") = 0.01);

  // compensation
  py::class_<CompensationConfig>(m, "CompensationConfig")
      .def(py::init<>())
      .def_readwrite("threshold", &CompensationConfig::threshold)
      .def_readwrite("window", &CompensationConfig::window)
      .def_readwrite("a_min", &CompensationConfig::a_min)
      .def_readwrite("a_max", &CompensationConfig::a_max);
  m.def("compensation_accel", &compensation_accel, py::arg("dp"), py::arg("config"));

  // vehicle
  py::class_<VehicleState>(m, "VehicleState")
      .def(py::init<double, double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
           py::arg("heading") = 0.0, py::arg("v") = 0.0)
      .def_readwrite("x", &VehicleState::x)
      .def_readwrite("y", &VehicleState::y)
      .def_readwrite("heading", &VehicleState::heading)
      .def_readwrite("v", &VehicleState::v);

  py::class_<ControlInput>(m, "ControlInput")
      .def(py::init<double, double>(), py::arg("accel") = 0.0, py::arg("steer") = 0.0)
      .def_readwrite("accel", &ControlInput::accel)
      .def_readwrite("steer", &ControlInput::steer);

  py::class_<VehicleParams>(m, "VehicleParams")
      .def(py::init<>())
      .def_readwrite("wheelbase", &VehicleParams::wheelbase)
      .def_readwrite("max_steer", &VehicleParams::max_steer)
      .def_readwrite("max_steer_rate", &VehicleParams::max_steer_rate)
      .def_readwrite("max_accel", &VehicleParams::max_accel)
      .def_readwrite("max_decel", &VehicleParams::max_decel);

  m.def("vehicle_step", &step, py::arg("state"), py::arg("input"), py::arg("params"),
        py::arg("dt"), py::arg("prev_steer") = std::nullopt, py::arg("applied") = nullptr);

  // controllers
  py::class_<LqrConfig>(m, "LqrConfig")
      .def(py::init<>())
      .def_readwrite("q_diag", &LqrConfig::q_diag)
      .def_readwrite("r", &LqrConfig::r)
      .def_readwrite("dare_tol", &LqrConfig::dare_tol)
      .def_readwrite("dare_max_iter", &LqrConfig::dare_max_iter)
      .def_readwrite("v_min", &LqrConfig::v_min);

  py::class_<DareSolution>(m, "DareSolution")
      .def_readonly("P", &DareSolution::P)
      .def_readonly("K", &DareSolution::K)
      .def_readonly("iterations", &DareSolution::iterations)
      .def_readonly("residual", &DareSolution::residual);

  m.def(
      "solve_dare",
      [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::MatrixXd& Q,
         const Eigen::MatrixXd& R, const LqrConfig& cfg) { return solve_dare(A, B, Q, R, cfg); },
      py::arg("A"), py::arg("B"), py::arg("Q"), py::arg("R"), py::arg("config") = LqrConfig{});

  // target generation
  py::class_<CenterlinePoint>(m, "CenterlinePoint")
      .def(py::init<double, double, double>(), py::arg("station") = 0.0, py::arg("x") = 0.0,
           py::arg("y") = 0.0)
      .def_readwrite("station", &CenterlinePoint::station)
      .def_readwrite("x", &CenterlinePoint::x)
      .def_readwrite("y", &CenterlinePoint::y);

  py::enum_<SegmentKind>(m, "SegmentKind")
      .value("Straight", SegmentKind::Straight)
      .value("Arc", SegmentKind::Arc)
      .value("Spiral", SegmentKind::Spiral);
  py::enum_<TurnDirection>(m, "TurnDirection")
      .value("Left", TurnDirection::Left)
      .value("Right", TurnDirection::Right);

  py::class_<AlignmentSegment>(m, "AlignmentSegment")
      .def(py::init<>())
      .def_readwrite("kind", &AlignmentSegment::kind)
      .def_readwrite("length", &AlignmentSegment::length)
      .def_readwrite("radius", &AlignmentSegment::radius)
      .def_readwrite("direction", &AlignmentSegment::direction);

  py::class_<AlignmentSpec>(m, "AlignmentSpec")
      .def(py::init<>())
      .def_readwrite("segments", &AlignmentSpec::segments);

  py::class_<SpeedProfileConfig>(m, "SpeedProfileConfig")
      .def(py::init<>())
      .def_readwrite("v_desired", &SpeedProfileConfig::v_desired)
      .def_readwrite("a_accel", &SpeedProfileConfig::a_accel)
      .def_readwrite("a_decel", &SpeedProfileConfig::a_decel)
      .def_readwrite("a_lat_max", &SpeedProfileConfig::a_lat_max)
      .def_readwrite("noise_fraction", &SpeedProfileConfig::noise_fraction)
      .def_readwrite("seed", &SpeedProfileConfig::seed)
      .def_readwrite("v_start", &SpeedProfileConfig::v_start)
      .def_readwrite("v_end", &SpeedProfileConfig::v_end);

  m.def("load_centerline", [](const std::string& path) { return load_centerline(path); },
        py::arg("path"));
  m.def("synth_alignment", &synth_alignment, py::arg("spec"), py::arg("spacing") = 1.0);
  m.def("build_speed_profile", &build_speed_profile, py::arg("centerline"), py::arg("config"));
  m.def("apply_speed_noise", &apply_speed_noise, py::arg("profile"), py::arg("config"));
  m.def("to_trajectory", &to_trajectory, py::arg("centerline"), py::arg("profile"));

  // error analysis
  py::class_<ErrorSample>(m, "ErrorSample")
      .def_readonly("t", &ErrorSample::t)
      .def_readonly("speed_error", &ErrorSample::speed_error)
      .def_readonly("heading_error", &ErrorSample::heading_error)
      .def_readonly("lateral_error", &ErrorSample::lateral_error)
      .def_readonly("leadlag_error", &ErrorSample::leadlag_error);

  py::class_<ErrorSeries>(m, "ErrorSeries").def_readonly("samples", &ErrorSeries::samples);

  py::class_<Band>(m, "Band")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &Band::lo)
      .def_readwrite("hi", &Band::hi);

  py::class_<ChannelSummary>(m, "ChannelSummary")
      .def_readonly("max_abs", &ChannelSummary::max_abs)
      .def_readonly("rms", &ChannelSummary::rms)
      .def_readonly("mean", &ChannelSummary::mean)
      .def_readonly("band", &ChannelSummary::band)
      .def_readonly("band_fraction", &ChannelSummary::band_fraction);

  py::class_<ErrorSummary>(m, "ErrorSummary")
      .def_readonly("speed", &ErrorSummary::speed)
      .def_readonly("heading", &ErrorSummary::heading)
      .def_readonly("lateral", &ErrorSummary::lateral)
      .def_readonly("leadlag", &ErrorSummary::leadlag);

  py::class_<EpisodeStats>(m, "EpisodeStats")
      .def_readonly("count", &EpisodeStats::count)
      .def_readonly("all_reentered", &EpisodeStats::all_reentered)
      .def_readonly("threshold", &EpisodeStats::threshold);

  m.def("compute_errors", &compute_errors, py::arg("target"), py::arg("tracked"),
        py::arg("dt") = 0.01, py::arg("eps") = 0.01);
  m.def("summarize", &summarize, py::arg("series"),
        py::arg("bands") = std::map<std::string, Band>{});
  m.def("episode_stats", &episode_stats, py::arg("series"), py::arg("threshold"));

  // simulation
  py::class_<DualPidConfig>(m, "DualPidConfig").def(py::init<>());
  py::class_<ControlConfig>(m, "ControlConfig")
      .def(py::init<>())
      .def_readwrite("lqr", &ControlConfig::lqr)
      .def_readwrite("pid", &ControlConfig::pid)
      .def_readwrite("comp", &ControlConfig::comp)
      .def_readwrite("comp_enabled", &ControlConfig::comp_enabled)
      .def_readwrite("dt", &ControlConfig::dt);

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init<>())
      .def_readwrite("dt", &SimulationConfig::dt)
      .def_readwrite("eps", &SimulationConfig::eps)
      .def_readwrite("seed", &SimulationConfig::seed)
      .def_readwrite("v_start", &SimulationConfig::v_start)
      .def_readwrite("duration_cap_s", &SimulationConfig::duration_cap_s)
      .def_readwrite("divergence_m", &SimulationConfig::divergence_m);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("tracked", &SimResult::tracked)
      .def_readonly("ticks", &SimResult::ticks)
      .def_readonly("max_abs_dp", &SimResult::max_abs_dp)
      .def_readonly("max_abs_dq", &SimResult::max_abs_dq)
      .def_readonly("comp_episodes", &SimResult::comp_episodes);

  m.def("run_simulation", &run_simulation, py::arg("target"), py::arg("vehicle"),
        py::arg("control"), py::arg("config"));

  // file I/O
  m.def("load_trajectory_csv", &load_trajectory_csv, py::arg("path"));
  m.def("save_trajectory_csv", &save_trajectory_csv, py::arg("trajectory"), py::arg("path"),
        py::arg("comments") = std::vector<std::string>{});
}
