#include "socnav/sa_rvo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "socnav/errors.hpp"

namespace socnav {

double VelocityCone::time_to_collision(Vec2 v) const {
  const Vec2 rel = v - apex;
  const Vec2 w = anchor - center;
  // Already overlapping: a separating velocity has no collision ahead of it.
  if (w.squared_norm() <= combined_radius * combined_radius && w.dot(rel) > 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const auto t = ray_disc_first_hit(anchor, rel, center, combined_radius);
  return t ? *t : std::numeric_limits<double>::infinity();
}

void RvoWeights::validate() const {
  if (intent < 0.0 || smoothness < 0.0 || goal < 0.0) {
    throw ConfigError("RVO weights must be non-negative");
  }
  if (!(intent + smoothness + goal > 0.0)) {
    throw ConfigError("RVO weights must not all be zero");
  }
}

std::vector<VelocityCone> build_cones(const RobotState& robot,
                                      std::span<const PedestrianState> peds, double alpha,
                                      double sensing_range, double lookahead) {
  const Vec2 v_robot = twist_to_planar_velocity(robot, robot.twist, lookahead);
  const Vec2 anchor = robot.pose.position;
  std::vector<VelocityCone> cones;
  cones.reserve(peds.size());
  for (const auto& ped : peds) {
    if ((ped.position - anchor).norm() > sensing_range) continue;
    cones.push_back({(1.0 - alpha) * v_robot + alpha * ped.velocity, anchor, ped.position,
                     robot.radius + ped.personal_radius, ped.id});
  }
  return cones;
}

bool in_any_cone(Vec2 v, std::span<const VelocityCone> cones) {
  return std::any_of(cones.begin(), cones.end(),
                     [v](const VelocityCone& c) { return c.contains(v); });
}

std::vector<Twist> sample_controls(const SpeedLimits& limits, const SamplingParams& sampling,
                                   Twist operator_cmd) {
  if (sampling.n_linear < 2 || sampling.n_angular < 3) {
    throw ConfigError("sampling needs n_linear >= 2 and n_angular >= 3");
  }
  const double lin_lo = sampling.allow_reverse ? -limits.v_max : 0.0;
  const double lin_hi = limits.v_max;
  const double w = limits.w_max;

  std::vector<Twist> samples;
  samples.reserve(static_cast<std::size_t>(sampling.n_linear * sampling.n_angular) + 3);
  const Twist cmd = limits.clamp(operator_cmd);
  samples.push_back(cmd);
  // Turning in place displaces nothing, so it ties with stopping in velocity
  // space; listing it first keeps the operator's heading intent.
  samples.push_back({0.0, cmd.angular});
  samples.push_back(Twist{});
  for (int i = 0; i < sampling.n_linear; ++i) {
    // Clamped because the interpolated endpoint can overshoot by one ulp.
    const double lin =
        std::clamp(lin_lo + (lin_hi - lin_lo) * i / (sampling.n_linear - 1), lin_lo, lin_hi);
    for (int j = 0; j < sampling.n_angular; ++j) {
      const double ang = std::clamp(-w + 2.0 * w * j / (sampling.n_angular - 1), -w, w);
      samples.push_back({lin, ang});
    }
  }
  return samples;
}

std::vector<Twist> filter_static(std::span<const Twist> samples, const RobotState& robot,
                                 std::span<const Segment2> walls,
                                 const StaticFilterParams& params) {
  const double clearance = robot.radius + params.margin;
  std::vector<Twist> kept;
  kept.reserve(samples.size());
  for (const Twist& s : samples) {
    if (s == Twist{} || walls.empty()) {
      kept.push_back(s);
      continue;
    }
    const auto poses = predict_trajectory(robot, s, params.horizon, params.dt);
    const bool clear = std::all_of(poses.begin(), poses.end(), [&](const Pose2& p) {
      return std::all_of(walls.begin(), walls.end(), [&](const Segment2& wall) {
        return disc_segment_distance(p.position, wall) > clearance;
      });
    });
    if (clear) kept.push_back(s);
  }
  return kept;
}

double rvo_objective(Vec2 v, const RvoContext& ctx, const RvoWeights& weights) {
  return weights.intent * (v - ctx.v_pref).squared_norm() +
         weights.smoothness * (v - ctx.v_prev_opt).squared_norm() +
         weights.goal * (v - ctx.v_goal).squared_norm();
}

OptimalVelocity optimal_velocity(std::span<const Twist> samples, const RobotState& robot,
                                 std::span<const VelocityCone> cones, const RvoContext& ctx,
                                 const RvoWeights& weights, double lookahead) {
  if (samples.empty()) throw ConfigError("optimal_velocity: empty sample list");

  std::vector<Vec2> planar(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    planar[i] = twist_to_planar_velocity(robot, samples[i], lookahead);
  }

  bool found = false;
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (in_any_cone(planar[i], cones)) continue;
    const double cost = rvo_objective(planar[i], ctx, weights);
    if (!found || cost < best_cost) {
      found = true;
      best = i;
      best_cost = cost;
    }
  }
  if (found) return {samples[best], planar[best], best_cost, best, false};

  // Every sample collides eventually: buy the most time, slower first.
  double best_ttc = -1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double ttc = std::numeric_limits<double>::infinity();
    for (const auto& cone : cones) ttc = std::min(ttc, cone.time_to_collision(planar[i]));
    const bool better =
        ttc > best_ttc ||
        (ttc == best_ttc && std::abs(samples[i].linear) < std::abs(samples[best].linear));
    if (better) {
      best = i;
      best_ttc = ttc;
    }
  }
  return {samples[best], planar[best], rvo_objective(planar[best], ctx, weights), best, true};
}

Vec2 goal_velocity(Vec2 position, Vec2 goal, double v_max) {
  return (goal - position).normalized().value_or(Vec2{}) * v_max;
}

}  // namespace socnav
