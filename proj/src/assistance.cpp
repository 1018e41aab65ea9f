#include "socnav/assistance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace socnav {
namespace {

constexpr std::array<std::pair<Condition, std::string_view>, 6> kConditionNames{{
    {Condition::MC, "mc"},
    {Condition::H, "h"},
    {Condition::V_T, "vt"},
    {Condition::V_B, "vb"},
    {Condition::HV_T, "hvt"},
    {Condition::HV_B, "hvb"},
}};

}  // namespace

std::string_view to_string(Condition c) {
  for (const auto& [cond, name] : kConditionNames) {
    if (cond == c) return name;
  }
  return "?";
}

std::optional<Condition> parse_condition(std::string_view s) {
  for (const auto& [cond, name] : kConditionNames) {
    if (name == s) return cond;
  }
  return std::nullopt;
}

Vec2 raw_haptic_force(Twist v_opt, Twist v_pref, double gain) {
  return {gain * (v_opt.linear - v_pref.linear), gain * (v_opt.angular - v_pref.angular)};
}

Vec2 haptic_force(Twist v_opt, Twist v_pref, double gain) {
  const Vec2 f = raw_haptic_force(v_opt, v_pref, gain);
  return {std::clamp(f.x, -1.0, 1.0), std::clamp(f.y, -1.0, 1.0)};
}

bool update_guidance_gate(bool shown, double gap, const GuidanceParams& params) {
  if (shown) return gap > params.threshold - params.hysteresis;
  return gap > params.threshold + params.hysteresis;
}

void guidance_visuals(AssistanceOutput& out, const RobotState& robot, Twist v_opt, Twist v_pref,
                      Condition condition, const SpeedLimits& limits,
                      const GuidanceParams& params, double lookahead, bool& gate_shown) {
  out.predicted_trajectory = predict_trajectory(robot, v_pref, params.horizon, params.dt);
  out.speed_fraction = std::min(1.0, std::abs(v_pref.linear) / limits.v_max);
  out.haptic_force = {};
  out.guidance_trajectory.clear();
  out.steering_bars = {};
  out.show_guidance = false;

  if (!has_assistance(condition)) {
    gate_shown = false;
    return;
  }

  const double gap = (twist_to_planar_velocity(robot, v_opt, lookahead) -
                      twist_to_planar_velocity(robot, v_pref, lookahead))
                         .norm();
  gate_shown = update_guidance_gate(gate_shown, gap, params);
  out.show_guidance = gate_shown;

  if (has_haptics(condition)) out.haptic_force = haptic_force(v_opt, v_pref, params.haptic_gain);

  if (has_guidance_trajectory(condition) && out.show_guidance) {
    out.guidance_trajectory = predict_trajectory(robot, v_opt, params.horizon, params.dt);
  }

  if (has_steering_bars(condition)) {
    // Bar side is the direction the operator must steer: a negative angular
    // error means turn right.
    const double delta = v_opt.angular - v_pref.angular;
    const double level = std::clamp(std::abs(delta) / limits.w_max * params.bar_gain, 0.0, 1.0);
    if (delta < 0.0) out.steering_bars.right = level;
    if (delta > 0.0) out.steering_bars.left = level;
  }
}

AssistanceOutput compute_assistance(const AssistanceInputs& in, Condition condition,
                                    const RvoParams& rvo, const SpeedLimits& limits,
                                    const GuidanceParams& guidance, bool& gate_shown) {
  AssistanceOutput out;
  if (!has_assistance(condition)) {
    guidance_visuals(out, in.robot, in.v_pref, in.v_pref, condition, limits, guidance,
                     rvo.lookahead, gate_shown);
    return out;
  }

  const auto samples = sample_controls(limits, rvo.sampling, in.v_pref);
  const auto safe = filter_static(samples, in.robot, in.walls, rvo.static_filter);
  const auto cones = build_cones(in.robot, in.peds, rvo.alpha, rvo.sensing_range, rvo.lookahead);

  const RvoContext ctx{twist_to_planar_velocity(in.robot, in.v_pref, rvo.lookahead),
                       in.v_prev_opt, goal_velocity(in.robot.pose.position, in.goal, limits.v_max),
                       rvo.alpha, limits.v_max};
  const OptimalVelocity best =
      optimal_velocity(safe, in.robot, cones, ctx, rvo.weights, rvo.lookahead);

  out.v_opt_twist = best.twist;
  out.v_opt_planar = best.planar;
  out.infeasible = best.infeasible;
  guidance_visuals(out, in.robot, best.twist, in.v_pref, condition, limits, guidance,
                   rvo.lookahead, gate_shown);
  return out;
}

void rerender_for_command(AssistanceOutput& out, const RobotState& robot, Twist v_pref,
                          Condition condition, const SpeedLimits& limits,
                          const GuidanceParams& guidance, double lookahead, bool& gate_shown) {
  const Twist v_opt = out.v_opt_twist.value_or(v_pref);
  guidance_visuals(out, robot, v_opt, v_pref, condition, limits, guidance, lookahead, gate_shown);
}

}  // namespace socnav
