#include "doctest.h"

#include <cmath>

#include "socnav/robot_model.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace socnav;

namespace {

RobotState at(double x, double y, double th) {
  RobotState s;
  s.pose = Pose2(x, y, th);
  return s;
}

}  // namespace

TEST_CASE("map_input: worked examples") {
  const SpeedLimits lim{1.0, 1.5};
  CHECK(map_input({0, 0}, lim, 0.0) == Twist{0, 0});
  CHECK(map_input({0, 0}, lim, 0.3) == Twist{0, 0});
  CHECK(map_input({0, 1}, lim, 0.0) == Twist{1.0, 0});
  CHECK(map_input({-1, 0}, lim, 0.0) == Twist{0, 1.5});
  CHECK(map_input({1, 0}, lim, 0.0) == Twist{0, -1.5});
}

TEST_CASE("map_input: deadzone") {
  const SpeedLimits lim{1.0, 1.5};
  // Radial gate: a diagonal stick of norm < deadzone does nothing.
  CHECK(map_input({0.07, 0.07}, lim, 0.1) == Twist{0, 0});
  // Full deflection still reaches the limit.
  CHECK(map_input({0, 1}, lim, 0.1).linear == doctest::Approx(1.0));
  // Halfway through the live band maps to half speed.
  CHECK(map_input({0, 0.55}, lim, 0.1).linear == doctest::Approx(0.5));
}

TEST_CASE("StickInput clamps to the unit square") {
  const StickInput s(2.0, -3.0);
  CHECK(s.axis_x == 1.0);
  CHECK(s.axis_y == -1.0);
}

TEST_CASE("property: mapped commands respect the limits and stick_for inverts map_input") {
  testing::Gen g(201);
  const SpeedLimits lim{0.8, 1.2};
  for (int i = 0; i < 3000; ++i) {
    const double dz = g.real(0.0, 0.5);
    const Twist t = map_input({g.real(-1, 1), g.real(-1, 1)}, lim, dz);
    CHECK(std::abs(t.linear) <= lim.v_max);
    CHECK(std::abs(t.angular) <= lim.w_max);

    const Twist want = g.twist(lim);
    const Twist back = map_input(stick_for(want, lim, dz), lim, dz);
    // Commands whose stick lands inside the radial gate come back as zero.
    if (back == Twist{}) continue;
    CHECK(back.linear == doctest::Approx(want.linear).epsilon(1e-9));
    CHECK(back.angular == doctest::Approx(want.angular).epsilon(1e-9));
  }
}

TEST_CASE("step: worked examples") {
  const RobotState a = step(at(0, 0, 0), {1, 0}, 1.0);
  CHECK(a.pose.position.x == doctest::Approx(1.0));
  CHECK(a.pose.position.y == doctest::Approx(0.0));
  CHECK(a.pose.heading == doctest::Approx(0.0));
  CHECK(a.twist == Twist{1, 0});

  const RobotState b = step(at(0, 0, 0), {0, kPi / 2}, 1.0);
  CHECK(b.pose.position.x == 0.0);
  CHECK(b.pose.position.y == 0.0);
  CHECK(b.pose.heading == doctest::Approx(kPi / 2));

  const RobotState c = step(at(0, 0, 0), {1, 1}, kPi / 2);
  CHECK(c.pose.position.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.pose.position.y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.pose.heading == doctest::Approx(kPi / 2));
  const Pose2 e = oracle::euler_unicycle(Pose2(0, 0, 0), {1, 1}, kPi / 2, 157080);
  CHECK((c.pose.position - e.position).norm() < 1e-3);
}

TEST_CASE("step: rate limits") {
  RobotState s = at(0, 0, 0);
  const AccelLimits acc{1.0, 2.0};
  s = step(s, {1.0, 1.5}, 0.1, acc);
  CHECK(s.twist.linear == doctest::Approx(0.1));
  CHECK(s.twist.angular == doctest::Approx(0.2));
  // Unlimited by default: the twist is the command exactly.
  CHECK(step(at(0, 0, 0), {0.3, -0.7}, 0.05).twist == Twist{0.3, -0.7});
}

TEST_CASE("property: step is reversible") {
  testing::Gen g(202);
  for (int i = 0; i < 2000; ++i) {
    RobotState s;
    s.pose = g.pose(5.0);
    const Twist c = g.twist({2.0, 3.0});
    const double dt = g.real(0.01, 1.0);
    const RobotState back = step(step(s, c, dt), {-c.linear, -c.angular}, dt);
    CHECK((back.pose.position - s.pose.position).norm() < 1e-9);
    CHECK(std::abs(wrap_angle(back.pose.heading - s.pose.heading)) < 1e-9);
  }
}

TEST_CASE("property: closed form matches dense Euler") {
  testing::Gen g(203);
  for (int i = 0; i < 20; ++i) {
    const Twist c = g.twist({1.0, 1.5});
    const double T = g.real(0.1, 3.0);
    const RobotState s = step(at(0, 0, 0), c, T);
    const Pose2 e = oracle::euler_unicycle(Pose2(0, 0, 0), c, T, std::lround(T / 1e-5));
    CHECK((s.pose.position - e.position).norm() < 1e-3);
  }
}

TEST_CASE("predict_trajectory: worked examples") {
  const auto still = predict_trajectory(at(1, 2, 0.3), {0, 0}, 1.0, 0.1);
  CHECK(still.size() == 10);
  for (const auto& p : still) CHECK(p == Pose2(1, 2, 0.3));

  const auto line = predict_trajectory(at(0, 0, 0), {1, 0}, 2.0, 0.5);
  REQUIRE(line.size() == 4);
  CHECK(line[0].position.x == doctest::Approx(0.5));
  CHECK(line[1].position.x == doctest::Approx(1.0));
  CHECK(line[2].position.x == doctest::Approx(1.5));
  CHECK(line[3].position.x == doctest::Approx(2.0));

  const auto half = predict_trajectory(at(0, 0, 0), {1, 1}, kPi, kPi / 100);
  CHECK(half.size() == 100);
  CHECK((half.back().position - Vec2{0, 2}).norm() < 1e-6);
}

TEST_CASE("predict_trajectory: count is ceil(horizon / dt)") {
  CHECK(predict_trajectory(at(0, 0, 0), {1, 0}, 1.0, 0.3).size() == 4);
  CHECK(predict_trajectory(at(0, 0, 0), {1, 0}, 2.0, 0.1).size() == 20);
  CHECK(predict_trajectory(at(0, 0, 0), {1, 0}, 0.5, 0.5).size() == 1);
}

TEST_CASE("property: predicted poses never move faster than the limits") {
  testing::Gen g(204);
  const SpeedLimits lim{1.0, 1.5};
  for (int i = 0; i < 500; ++i) {
    RobotState s;
    s.pose = g.pose(5.0);
    const Twist c = map_input({g.real(-1, 1), g.real(-1, 1)}, lim, 0.1);
    const double dt = 0.1;
    const auto poses = predict_trajectory(s, c, 2.0, dt);
    Pose2 prev = s.pose;
    for (const auto& p : poses) {
      CHECK((p.position - prev.position).norm() <= lim.v_max * dt + 1e-12);
      CHECK(std::abs(wrap_angle(p.heading - prev.heading)) <= lim.w_max * dt + 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("twist_to_planar_velocity: worked examples") {
  const Vec2 a = twist_to_planar_velocity(at(0, 0, 0), {1, 0}, 0.5);
  CHECK(a == Vec2{1, 0});
  CHECK(twist_to_planar_velocity(at(0, 0, 0), {1, 0}, 3.0) == Vec2{1, 0});
  CHECK(twist_to_planar_velocity(at(0, 0, 0), {0, 5}, 0.5) == Vec2{0, 0});
  const Vec2 c = twist_to_planar_velocity(at(0, 0, 0), {1, 1}, 1.0);
  CHECK(c.x == doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  CHECK(c.y == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("property: planar velocity matches the trajectory endpoint and the chord bound") {
  testing::Gen g(205);
  for (int i = 0; i < 2000; ++i) {
    RobotState s;
    s.pose = g.pose(5.0);
    const Twist c = g.twist({1.0, 1.5});
    const double h = g.real(0.05, 2.0);
    const Vec2 v = twist_to_planar_velocity(s, c, h);
    CHECK(v.norm() <= std::abs(c.linear) + 1e-12);
    const Pose2 end = step(s, c, h).pose;
    CHECK((v - (end.position - s.pose.position) / h).norm() < 1e-9);
  }
}
