#pragma once

// Random SA-RVO decision problems shared by the unit and acceptance tests.

#include <vector>

#include "socnav/sa_rvo.hpp"
#include "support/generators.hpp"

namespace socnav::testing {

struct RvoWorld {
  RobotState robot;
  std::vector<PedestrianState> peds;
  std::vector<VelocityCone> cones;
  std::vector<Twist> samples;
  RvoContext ctx;
  RvoWeights weights;
  double lookahead = 0.5;
};

// Crowd density and sampling grids vary per draw. Weight vectors include zeros
// so exact ties between samples occur regularly.
inline RvoWorld random_rvo_world(Gen& g) {
  RvoWorld w;
  const SpeedLimits limits{g.real(0.5, 1.5), g.real(0.8, 2.0)};
  w.robot = g.robot(1.0);
  w.robot.twist = g.twist(limits, false);
  w.peds = g.pedestrians(g.integer(0, 6), 4.0);
  w.lookahead = g.real(0.2, 1.0);
  w.ctx.alpha = g.real(0.0, 1.0);
  w.ctx.v_max = limits.v_max;
  w.cones = build_cones(w.robot, w.peds, w.ctx.alpha, 8.0, w.lookahead);

  const SamplingParams sampling{g.integer(2, 9), 2 * g.integer(1, 8) + 1, g.coin(0.3)};
  const Twist cmd = g.twist({limits.v_max * 1.3, limits.w_max * 1.3});
  w.samples = sample_controls(limits, sampling, cmd);

  w.ctx.v_pref = twist_to_planar_velocity(w.robot, limits.clamp(cmd), w.lookahead);
  w.ctx.v_prev_opt = g.coin(0.2) ? Vec2{} : g.vec(limits.v_max);
  w.ctx.v_goal = goal_velocity(w.robot.pose.position, g.vec(6.0), limits.v_max);

  const auto pick = [&g] { return g.coin(0.3) ? 0.0 : g.real(0.0, 2.0); };
  do {
    w.weights = {pick(), pick(), pick()};
  } while (!(w.weights.intent + w.weights.smoothness + w.weights.goal > 0.0));
  return w;
}

}  // namespace socnav::testing
