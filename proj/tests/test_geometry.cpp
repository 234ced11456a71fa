#include <doctest.h>

#include <cmath>
#include <random>

#include "sttrack/errors.hpp"
#include "sttrack/geometry.hpp"

using namespace sttrack;

namespace {
constexpr double kPi = 3.14159265358979323846;

Trajectory straight_x(double v = 10.0, double duration = 20.0, double dt = 0.1) {
  std::vector<TrajectoryPoint> pts;
  for (double t = 0.0; t <= duration + 1e-12; t += dt)
    pts.push_back({t, v * t, 0.0, v, 0.0});
  return make_trajectory(std::move(pts));
}

// CCW circle of radius r at speed v, angles in [angle0, angle1]; sample i
// such that the midpoint lands exactly on a stored timestamp.
Trajectory circle_ccw(double r, double v, double angle0, double angle1, int n) {
  double omega = v / r;
  std::vector<TrajectoryPoint> pts;
  for (int i = 0; i <= n; ++i) {
    double angle = angle0 + (angle1 - angle0) * i / n;
    double t = (angle - angle0) / omega;
    pts.push_back({t, r * std::cos(angle), r * std::sin(angle), v, wrap_angle(angle + kPi / 2)});
  }
  return make_trajectory(std::move(pts));
}
}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(2 * kPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-6.2) == doctest::Approx(2 * kPi - 6.2));
  for (double a : {-100.0, -3.2, 0.1, 7.9, 1e4}) {
    double w = wrap_angle(a);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
  }
}

TEST_CASE("sample: linear midpoint") {
  Trajectory traj = make_trajectory({{0.0, 0.0, 0.0, 0.0, 0.0}, {1.0, 10.0, 0.0, 0.0, 0.0}});
  CHECK(sample(traj, 0.5).x == doctest::Approx(5.0));
}

TEST_CASE("sample: exact at stored timestamps") {
  Trajectory traj = straight_x();
  const auto& p = traj.points[7];
  TrajectoryPoint s = sample(traj, p.t);
  CHECK(s.x == p.x);
  CHECK(s.y == p.y);
  CHECK(s.v == p.v);
  CHECK(s.heading == p.heading);
}

TEST_CASE("sample: heading interpolates along the shortest arc") {
  // Endpoints 3.0 and -3.0 rad: the short way crosses pi, not 0.
  Trajectory traj = make_trajectory({{0.0, 0.0, 0.0, 1.0, 3.0}, {1.0, 1.0, 0.0, 1.0, -3.0}});
  double h = sample(traj, 0.5).heading;
  CHECK(std::abs(h) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("sample: monotone per coordinate between stored samples") {
  Trajectory traj = straight_x();
  double prev = sample(traj, 0.31).x;
  for (double t = 0.32; t < 0.40; t += 0.01) {
    double x = sample(traj, t).x;
    CHECK(x >= prev);
    prev = x;
  }
}

TEST_CASE("sample: out of range names the valid interval") {
  Trajectory traj = straight_x(10.0, 2.0);
  CHECK_THROWS_AS(sample(traj, -0.1), std::out_of_range);
  CHECK_THROWS_AS(sample(traj, 2.5), std::out_of_range);
  try {
    sample(traj, 2.5);
  } catch (const std::out_of_range& e) {
    std::string msg = e.what();
    CHECK(msg.find("[0") != std::string::npos);
    CHECK(msg.find("2") != std::string::npos);
  }
}

TEST_CASE("tangent_unit: straight and diagonal motion") {
  Trajectory traj = straight_x();
  UnitVec2 u = tangent_unit(traj, 5.0);
  CHECK(u.ux == doctest::Approx(1.0));
  CHECK(u.uy == doctest::Approx(0.0));

  std::vector<TrajectoryPoint> pts;
  for (double t = 0.0; t <= 10.0; t += 0.1)
    pts.push_back({t, 7.0 * t, 7.0 * t, 7.0 * std::sqrt(2.0), kPi / 4});
  Trajectory diag = make_trajectory(std::move(pts));
  UnitVec2 d = tangent_unit(diag, 5.0);
  CHECK(d.ux == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(d.uy == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
}

TEST_CASE("tangent_unit: circle analytic derivative") {
  // Radius 50 CCW; at angle 0 (position (50, 0)) the tangent is (0, 1).
  Trajectory traj = circle_ccw(50.0, 10.0, -kPi / 2, kPi / 2, 200);
  double t_mid = traj.points[100].t;
  UnitVec2 u = tangent_unit(traj, t_mid);
  CHECK(u.ux == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(u.uy == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("tangent_unit: unit norm within 1e-12 everywhere") {
  Trajectory traj = circle_ccw(80.0, 15.0, 0.0, 2.0, 157);
  for (double t = traj.start_time(); t <= traj.end_time(); t += 0.37) {
    UnitVec2 u = tangent_unit(traj, t);
    CHECK(std::abs(u.ux * u.ux + u.uy * u.uy - 1.0) <= 1e-12);
  }
}

TEST_CASE("tangent_unit: stationary segment falls back to stored heading") {
  std::vector<TrajectoryPoint> pts;
  for (double t = 0.0; t <= 1.0 + 1e-12; t += 0.1)
    pts.push_back({t, 3.0, 4.0, 0.0, 0.5});
  Trajectory stopped = make_trajectory(std::move(pts));
  UnitVec2 u = tangent_unit(stopped, 0.5);
  CHECK(u.ux == doctest::Approx(std::cos(0.5)));
  CHECK(u.uy == doctest::Approx(std::sin(0.5)));
}

TEST_CASE("normal_unit: Eq-style substitutions and rotation identity") {
  UnitVec2 ex{1.0, 0.0};
  UnitVec2 n = normal_unit(ex);
  CHECK(n.ux == doctest::Approx(0.0));
  CHECK(n.uy == doctest::Approx(1.0));

  UnitVec2 ey{0.0, 1.0};
  UnitVec2 n2 = normal_unit(ey);
  CHECK(n2.ux == doctest::Approx(-1.0));
  CHECK(n2.uy == doctest::Approx(0.0));

  double c = std::sqrt(2.0) / 2;
  UnitVec2 diag{c, c};
  UnitVec2 n3 = normal_unit(diag);
  CHECK(n3.ux == doctest::Approx(-c));
  CHECK(n3.uy == doctest::Approx(c));

  // Orthogonality is an algebraic identity, exact in floating point.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    double a = angle(rng);
    UnitVec2 u{std::cos(a), std::sin(a)};
    UnitVec2 un = normal_unit(u);
    CHECK(u.ux * un.ux + u.uy * un.uy == 0.0);
    UnitVec2 four = normal_unit(normal_unit(normal_unit(normal_unit(u))));
    CHECK(four.ux == u.ux);
    CHECK(four.uy == u.uy);
  }
}

TEST_CASE("curvature: collinear, circles, orientation") {
  CHECK(curvature_three_point({0, 0}, {1, 0}, {2, 0}) == 0.0);
  CHECK(curvature_three_point({0, 0}, {1, 1}, {2, 2}) == 0.0);

  // Exact samples on circles, ~1 m spacing.
  for (double r : {10.0, 50.0, 100.0, 500.0, 1000.0}) {
    double step = 1.0 / r;  // radians per ~1 m of arc
    Vec2 a{r * std::cos(-step), r * std::sin(-step)};
    Vec2 b{r, 0.0};
    Vec2 c{r * std::cos(step), r * std::sin(step)};
    CHECK(std::abs(curvature_three_point(a, b, c) - 1.0 / r) <= 1e-6);
  }

  // Clockwise radius-50 circle: negative curvature.
  double step = 1.0 / 50.0;
  Vec2 a{50 * std::cos(step), -50 * std::sin(step)};
  Vec2 b{50, 0.0};
  Vec2 c{50 * std::cos(step), 50 * std::sin(step)};
  CHECK(curvature_three_point(c, b, a) == doctest::Approx(-0.02).epsilon(1e-6));

  CHECK_THROWS_AS(curvature_three_point({0, 0}, {0, 0}, {1, 0}), DataError);
}

TEST_CASE("curvature_at: endpoints copy nearest interior value") {
  Trajectory traj = circle_ccw(100.0, 10.0, 0.0, 1.0, 100);
  CHECK(curvature_at(traj, 0) == curvature_at(traj, 1));
  CHECK(curvature_at(traj, traj.size() - 1) == curvature_at(traj, traj.size() - 2));
  CHECK(curvature_at(traj, 50) == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("trajectory validation") {
  CHECK_THROWS_AS(make_trajectory({{0, 0, 0, 0, 0}}), DataError);
  CHECK_THROWS_AS(make_trajectory({{0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}), DataError);
  CHECK_THROWS_AS(make_trajectory({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}), DataError);
  CHECK_THROWS_AS(
      make_trajectory({{0, 0, 0, 0, 0}, {1, std::nan(""), 0, 0, 0}}), DataError);
  CHECK_THROWS_AS(make_trajectory({{0, 0, 0, -1, 0}, {1, 1, 0, 0, 0}}), DataError);
  CHECK_THROWS_AS(make_trajectory({{0, 0, 0, 0, 4.0}, {1, 1, 0, 0, 0}}), DataError);
}
