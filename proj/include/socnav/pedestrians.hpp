#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "socnav/geometry.hpp"
#include "socnav/robot_model.hpp"

namespace socnav {

/// Circular-specification social force parameters.
struct SfmParams {
  double relaxation_time = 0.5;    // tau, s
  double social_strength = 2.1;    // A, m/s^2
  double social_range = 0.3;       // B, m
  double obstacle_strength = 10.0; // m/s^2
  double obstacle_range = 0.1;     // m

  friend bool operator==(const SfmParams&, const SfmParams&) = default;
};

inline constexpr double kPedestrianGoalTolerance = 0.3;  // m
inline constexpr double kPedestrianSpeedCap = 1.3;       // times desired_speed
inline constexpr int kRobotAgentId = -1;

struct PedestrianState {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  Vec2 goal;
  double desired_speed = 1.2;    // m/s
  double body_radius = 0.3;      // m
  double personal_radius = 0.45; // m, measured from the pedestrian's center
  // Goals queued after the current one. With cycle_route set, a reached goal is
  // appended back to the queue so the pedestrian paces the route indefinitely.
  std::vector<Vec2> route;
  bool cycle_route = false;
  bool arrived = false;

  friend bool operator==(const PedestrianState&, const PedestrianState&) = default;
};

// Total social force acting on `self`. `others` must not contain self. The
// robot participates as one more repulsive agent.
Vec2 sfm_force(const PedestrianState& self, std::span<const PedestrianState> others,
               const RobotState& robot, std::span<const Segment2> walls,
               const SfmParams& params);

// One semi-implicit Euler tick for every pedestrian, evaluated against the same
// snapshot. Arrived pedestrians hold position.
std::vector<PedestrianState> step_pedestrians(std::span<const PedestrianState> peds,
                                              const RobotState& robot,
                                              std::span<const Segment2> walls,
                                              const SfmParams& params, double dt);

}  // namespace socnav
