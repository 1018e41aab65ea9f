#pragma once

#include <limits>
#include <vector>

#include "socnav/geometry.hpp"

namespace socnav {

/// Differential-drive control input.
struct Twist {
  double linear = 0.0;   // m/s
  double angular = 0.0;  // rad/s

  friend bool operator==(const Twist&, const Twist&) = default;
};

struct SpeedLimits {
  double v_max = 1.0;  // m/s
  double w_max = 1.5;  // rad/s

  Twist clamp(Twist t) const;

  friend bool operator==(const SpeedLimits&, const SpeedLimits&) = default;
};

/// Symmetric rate limits on the actuated twist. Infinite means none.
struct AccelLimits {
  double linear = std::numeric_limits<double>::infinity();   // m/s^2
  double angular = std::numeric_limits<double>::infinity();  // rad/s^2

  friend bool operator==(const AccelLimits&, const AccelLimits&) = default;
};

struct RobotState {
  Pose2 pose;
  Twist twist;
  double radius = 0.28;  // m

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// Two-axis operator stick. Components are clamped to [-1, 1] on construction.
struct StickInput {
  double axis_x = 0.0;
  double axis_y = 0.0;

  StickInput() = default;
  StickInput(double x, double y);

  friend bool operator==(const StickInput&, const StickInput&) = default;
};

// Position-velocity mapping. The radial deadzone gates the whole stick; each
// axis is then rescaled from [deadzone, 1] onto [0, 1]. Pushing the stick left
// (axis_x < 0) produces a positive (counter-clockwise) turn.
Twist map_input(StickInput input, const SpeedLimits& limits, double deadzone);

// Inverse of map_input for commands inside the limits, used by scripted operators
// that reason in twist space but have to drive the stick.
StickInput stick_for(Twist cmd, const SpeedLimits& limits, double deadzone);

// Exact unicycle integration over dt. The resulting twist is cmd, optionally
// rate limited by accel.
RobotState step(const RobotState& state, Twist cmd, double dt,
                const AccelLimits& accel = {});

// ceil(horizon / dt) poses under a constant command; the first one is the state
// one dt ahead.
std::vector<Pose2> predict_trajectory(const RobotState& state, Twist cmd, double horizon,
                                      double dt);

// Average planar velocity the robot would have over `lookahead` seconds under a
// constant cmd (chord of the arc divided by time).
Vec2 twist_to_planar_velocity(const RobotState& state, Twist cmd, double lookahead);

}  // namespace socnav
