#include "socnav/pedestrians.hpp"

#include <algorithm>
#include <cmath>

namespace socnav {
namespace {

constexpr double kCoincident = 1e-6;

// Fixed unit vector for a degenerate overlap, antisymmetric in (self, other) so
// the two agents are pushed apart along the same line.
Vec2 overlap_normal(int self_id, int other_id) {
  const int lo = std::min(self_id, other_id);
  const int hi = std::max(self_id, other_id);
  const double h = std::fmod(0.6180339887498949 * (static_cast<double>(lo) * 131.0 + hi), 1.0);
  const double phi = 2.0 * kPi * (h < 0.0 ? h + 1.0 : h);
  const Vec2 u{std::cos(phi), std::sin(phi)};
  return self_id < other_id ? u : -u;
}

Vec2 agent_repulsion(const PedestrianState& self, int other_id, Vec2 other_pos,
                     double other_radius, const SfmParams& p) {
  const Vec2 diff = self.position - other_pos;
  const double d = diff.norm();
  const Vec2 n = d < kCoincident ? overlap_normal(self.id, other_id) : diff / d;
  const double r = self.body_radius + other_radius;
  return n * (p.social_strength * std::exp((r - d) / p.social_range));
}

Vec2 wall_repulsion(const PedestrianState& self, const Segment2& wall, const SfmParams& p) {
  const Vec2 diff = self.position - wall.closest_point(self.position);
  const double d = diff.norm();
  Vec2 n;
  if (d < kCoincident) {
    // On the wall line: use the left normal of the segment.
    const Vec2 t = *(wall.b() - wall.a()).normalized();
    n = {-t.y, t.x};
  } else {
    n = diff / d;
  }
  return n * (p.obstacle_strength * std::exp((self.body_radius - d) / p.obstacle_range));
}

void advance_goal(PedestrianState& ped) {
  if (ped.route.empty()) {
    ped.arrived = true;
    ped.velocity = {};
    return;
  }
  const Vec2 reached = ped.goal;
  ped.goal = ped.route.front();
  ped.route.erase(ped.route.begin());
  if (ped.cycle_route) ped.route.push_back(reached);
}

}  // namespace

Vec2 sfm_force(const PedestrianState& self, std::span<const PedestrianState> others,
               const RobotState& robot, std::span<const Segment2> walls,
               const SfmParams& params) {
  const Vec2 to_goal = self.goal - self.position;
  const Vec2 desired = to_goal.normalized().value_or(Vec2{}) * self.desired_speed;
  Vec2 force = (desired - self.velocity) / params.relaxation_time;

  for (const auto& other : others) {
    force += agent_repulsion(self, other.id, other.position, other.body_radius, params);
  }
  force += agent_repulsion(self, kRobotAgentId, robot.pose.position, robot.radius, params);
  for (const auto& wall : walls) force += wall_repulsion(self, wall, params);
  return force;
}

std::vector<PedestrianState> step_pedestrians(std::span<const PedestrianState> peds,
                                              const RobotState& robot,
                                              std::span<const Segment2> walls,
                                              const SfmParams& params, double dt) {
  std::vector<PedestrianState> next(peds.begin(), peds.end());
  std::vector<PedestrianState> others;
  others.reserve(peds.size());

  for (std::size_t i = 0; i < peds.size(); ++i) {
    PedestrianState& ped = next[i];
    if (ped.arrived) continue;

    others.clear();
    for (std::size_t j = 0; j < peds.size(); ++j) {
      if (j != i) others.push_back(peds[j]);
    }
    const Vec2 force = sfm_force(peds[i], others, robot, walls, params);

    ped.velocity += force * dt;
    const double cap = kPedestrianSpeedCap * ped.desired_speed;
    const double speed = ped.velocity.norm();
    if (speed > cap) ped.velocity = ped.velocity * (cap / speed);
    ped.position += ped.velocity * dt;

    if ((ped.goal - ped.position).norm() <= kPedestrianGoalTolerance) advance_goal(ped);
  }
  return next;
}

}  // namespace socnav
