#include "socnav/trial.hpp"

#include <utility>

#include "socnav/errors.hpp"

namespace socnav {

std::string_view to_string(EndReason r) { return r == EndReason::Goal ? "goal" : "timeout"; }

std::optional<EndReason> parse_end_reason(std::string_view s) {
  if (s == "goal") return EndReason::Goal;
  if (s == "timeout") return EndReason::Timeout;
  return std::nullopt;
}

TrialRunner::TrialRunner(ScenarioConfig config, Condition condition, OperatorPolicy& policy)
    : config_(std::move(config)),
      condition_(condition),
      policy_(policy),
      world_(build_scenario(config_)) {}

const TickRecord& TrialRunner::tick() {
  if (finished()) throw ConfigError("tick() called on a finished trial");

  const double t = static_cast<double>(tick_) * config_.dt;
  const RobotState& robot = world_.robot;
  const PolicyContext ctx{tick_, t, robot, world_.goal, config_.limits, config_.deadzone};

  const OperatorInput intent = policy_.input(ctx);
  const bool gate_before = gate_shown_;
  assistance_ = compute_assistance(
      {robot, world_.peds, world_.walls, world_.goal, intent.twist, prev_opt_}, condition_,
      config_.rvo, config_.limits, config_.guidance, gate_shown_);

  const OperatorInput cmd = policy_.finalize(intent, assistance_, ctx);
  if (cmd.twist != intent.twist) {
    gate_shown_ = gate_before;
    rerender_for_command(assistance_, robot, cmd.twist, condition_, config_.limits,
                         config_.guidance, config_.rvo.lookahead, gate_shown_);
  }
  if (assistance_.v_opt_planar) prev_opt_ = *assistance_.v_opt_planar;

  TickRecord rec;
  rec.t = t;
  rec.robot = robot;
  rec.peds = world_.peds;
  rec.stick = cmd.stick;
  rec.v_cmd = cmd.twist;
  rec.v_pref_planar = twist_to_planar_velocity(robot, cmd.twist, config_.rvo.lookahead);
  rec.v_opt_twist = assistance_.v_opt_twist;
  rec.v_opt_planar = assistance_.v_opt_planar;
  rec.haptic_force = assistance_.haptic_force;
  rec.steering_bars = assistance_.steering_bars;
  rec.show_guidance = assistance_.show_guidance;
  rec.condition = condition_;
  rec.infeasible = assistance_.infeasible;
  log_.push_back(std::move(rec));

  if ((robot.pose.position - world_.goal).norm() <= config_.goal_threshold) {
    reason_ = EndReason::Goal;
  } else if (t >= config_.max_duration - 1e-9) {
    reason_ = EndReason::Timeout;
  } else {
    // Pedestrians react to the robot as it was at the start of the tick.
    RobotState next = step(robot, cmd.twist, config_.dt, config_.accel);
    world_.peds = step_pedestrians(world_.peds, robot, world_.walls, config_.sfm, config_.dt);
    world_.robot = next;
    ++tick_;
  }
  return log_.back();
}

TrialMetrics TrialRunner::metrics() const {
  if (log_.empty()) return {};
  return compute_metrics(log_, config_.metrics);
}

TrialResult TrialRunner::take_result() && {
  TrialResult result;
  result.metrics = metrics();
  result.reason = reason_.value_or(EndReason::Timeout);
  result.log = std::move(log_);
  return result;
}

TrialResult run_trial(const ScenarioConfig& config, OperatorPolicy& policy, Condition condition) {
  TrialRunner runner(config, condition, policy);
  while (!runner.finished()) runner.tick();
  return std::move(runner).take_result();
}

}  // namespace socnav
