#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "socnav/geometry.hpp"
#include "socnav/pedestrians.hpp"
#include "socnav/robot_model.hpp"

namespace socnav {

/// Reciprocal velocity obstacle of the robot induced by one pedestrian.
struct VelocityCone {
  Vec2 apex;               // m/s
  Vec2 anchor;             // robot position, m
  Vec2 center;             // pedestrian position, m
  double combined_radius;  // m
  int pedestrian_id = 0;

  bool contains(Vec2 v) const {
    return ray_disc_intersects(anchor, v - apex, center, combined_radius);
  }
  // Ray parameter of first contact for velocity v; +inf when v is outside or
  // when the discs already overlap and v separates them.
  double time_to_collision(Vec2 v) const;
};

struct RvoWeights {
  double intent = 1.0;      // w1, distance to the operator's command
  double smoothness = 0.3;  // w2, distance to the previous optimum
  double goal = 0.3;        // w3, distance to the goal velocity

  // Throws ConfigError for negative weights or an all-zero set.
  void validate() const;

  friend bool operator==(const RvoWeights&, const RvoWeights&) = default;
};

struct RvoContext {
  Vec2 v_pref;      // operator's planar velocity
  Vec2 v_prev_opt;  // optimal planar velocity from the previous tick
  Vec2 v_goal;      // full-speed velocity toward the goal
  double alpha = 0.5;
  double v_max = 1.0;
};

struct SamplingParams {
  int n_linear = 11;
  int n_angular = 21;
  bool allow_reverse = false;

  friend bool operator==(const SamplingParams&, const SamplingParams&) = default;
};

struct StaticFilterParams {
  double margin = 0.05;   // m
  double horizon = 1.5;   // s
  double dt = 0.1;        // s

  friend bool operator==(const StaticFilterParams&, const StaticFilterParams&) = default;
};

struct RvoParams {
  RvoWeights weights;
  double alpha = 0.5;
  double sensing_range = 8.0;  // m
  double lookahead = 0.5;      // s, twist -> planar velocity bridge
  SamplingParams sampling;
  StaticFilterParams static_filter;

  friend bool operator==(const RvoParams&, const RvoParams&) = default;
};

struct OptimalVelocity {
  Twist twist;
  Vec2 planar;
  double objective = 0.0;  // weighted sum at the returned sample
  std::size_t sample_index = 0;
  bool infeasible = false;
};

// Cones for every pedestrian whose center lies within sensing_range of the robot.
std::vector<VelocityCone> build_cones(const RobotState& robot,
                                      std::span<const PedestrianState> peds, double alpha,
                                      double sensing_range = 8.0, double lookahead = 0.5);

bool in_any_cone(Vec2 v, std::span<const VelocityCone> cones);

// Candidate commands. Injected specials come first (the clamped operator command,
// the same command with its linear part dropped, then the zero twist) so that
// ties resolve in favor of them; the grid follows in row-major order with linear
// velocity as the outer index.
std::vector<Twist> sample_controls(const SpeedLimits& limits, const SamplingParams& sampling,
                                   Twist operator_cmd = {});

// Keeps samples whose predicted path stays clear of every wall by more than
// robot.radius + margin. The zero twist is always kept.
std::vector<Twist> filter_static(std::span<const Twist> samples, const RobotState& robot,
                                 std::span<const Segment2> walls,
                                 const StaticFilterParams& params);

// Weighted-sum argmin over samples whose planar velocity lies outside every cone.
// With no such sample, falls back to the sample with the largest minimum
// time-to-collision (slower first, then sample order) and flags infeasible.
// Throws ConfigError on an empty sample list.
OptimalVelocity optimal_velocity(std::span<const Twist> samples, const RobotState& robot,
                                 std::span<const VelocityCone> cones, const RvoContext& ctx,
                                 const RvoWeights& weights, double lookahead = 0.5);

double rvo_objective(Vec2 v, const RvoContext& ctx, const RvoWeights& weights);

/// Full-speed velocity from the robot toward the goal (zero at the goal).
Vec2 goal_velocity(Vec2 position, Vec2 goal, double v_max);

}  // namespace socnav
