#include "socnav/robot_model.hpp"

#include <algorithm>
#include <cmath>

namespace socnav {
namespace {

constexpr double kStraightLineOmega = 1e-6;

double clamp_unit(double a) { return std::clamp(a, -1.0, 1.0); }

// Signed rescale of |a| from [deadzone, 1] onto [0, 1]. Returns +0.0 for zero.
double shape_axis(double a, double deadzone) {
  const double mag = std::clamp((std::abs(a) - deadzone) / (1.0 - deadzone), 0.0, 1.0);
  if (mag == 0.0) return 0.0;
  return a < 0.0 ? -mag : mag;
}

double unshape_axis(double f, double deadzone) {
  if (f == 0.0) return 0.0;
  const double a = deadzone + (1.0 - deadzone) * std::min(std::abs(f), 1.0);
  return f < 0.0 ? -a : a;
}

double rate_limit(double previous, double target, double max_rate, double dt) {
  if (std::isinf(max_rate)) return target;
  const double step = max_rate * dt;
  return previous + std::clamp(target - previous, -step, step);
}

// Displacement of a unicycle starting at heading theta under a constant twist.
Vec2 arc_displacement(double theta, Twist cmd, double dt) {
  const double v = cmd.linear;
  const double w = cmd.angular;
  if (std::abs(w) < kStraightLineOmega) {
    return {v * std::cos(theta) * dt, v * std::sin(theta) * dt};
  }
  const double r = v / w;
  const double theta_end = theta + w * dt;
  return {r * (std::sin(theta_end) - std::sin(theta)),
          r * (std::cos(theta) - std::cos(theta_end))};
}

}  // namespace

Twist SpeedLimits::clamp(Twist t) const {
  return {std::clamp(t.linear, -v_max, v_max), std::clamp(t.angular, -w_max, w_max)};
}

StickInput::StickInput(double x, double y) : axis_x(clamp_unit(x)), axis_y(clamp_unit(y)) {}

Twist map_input(StickInput input, const SpeedLimits& limits, double deadzone) {
  const double ax = clamp_unit(input.axis_x);
  const double ay = clamp_unit(input.axis_y);
  if (std::hypot(ax, ay) <= deadzone) return {};
  const double lin = limits.v_max * shape_axis(ay, deadzone);
  const double ang = limits.w_max * shape_axis(-ax, deadzone);
  return {lin == 0.0 ? 0.0 : lin, ang == 0.0 ? 0.0 : ang};
}

StickInput stick_for(Twist cmd, const SpeedLimits& limits, double deadzone) {
  const Twist c = limits.clamp(cmd);
  const double ay = unshape_axis(c.linear / limits.v_max, deadzone);
  const double ax = -unshape_axis(c.angular / limits.w_max, deadzone);
  return {ax == 0.0 ? 0.0 : ax, ay};
}

RobotState step(const RobotState& state, Twist cmd, double dt, const AccelLimits& accel) {
  const Twist applied{rate_limit(state.twist.linear, cmd.linear, accel.linear, dt),
                      rate_limit(state.twist.angular, cmd.angular, accel.angular, dt)};
  const double theta = state.pose.heading;
  RobotState next = state;
  next.pose = Pose2(state.pose.position + arc_displacement(theta, applied, dt),
                    theta + applied.angular * dt);
  next.twist = applied;
  return next;
}

std::vector<Pose2> predict_trajectory(const RobotState& state, Twist cmd, double horizon,
                                      double dt) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / dt - 1e-9)));
  std::vector<Pose2> poses;
  poses.reserve(n);
  RobotState s = state;
  for (std::size_t i = 0; i < n; ++i) {
    s = step(s, cmd, dt);
    poses.push_back(s.pose);
  }
  return poses;
}

Vec2 twist_to_planar_velocity(const RobotState& state, Twist cmd, double lookahead) {
  const double theta = state.pose.heading;
  if (std::abs(cmd.angular) < kStraightLineOmega) {
    return {cmd.linear * std::cos(theta), cmd.linear * std::sin(theta)};
  }
  return arc_displacement(theta, cmd, lookahead) / lookahead;
}

}  // namespace socnav
