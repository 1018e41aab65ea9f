#include "socnav/operator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace socnav {

OperatorInput OperatorPolicy::finalize(const OperatorInput& intent, const AssistanceOutput&,
                                       const PolicyContext&) {
  return intent;
}

OperatorInput GoalSeekPolicy::input(const PolicyContext& ctx) {
  const Vec2 to_goal = ctx.goal - ctx.robot.pose.position;
  const double error = wrap_angle(std::atan2(to_goal.y, to_goal.x) - ctx.robot.pose.heading);
  const Twist desired{
      ctx.limits.v_max * params_.cruise_fraction * std::max(0.0, std::cos(error)),
      std::clamp(params_.heading_gain * error, -ctx.limits.w_max, ctx.limits.w_max)};
  const StickInput stick = stick_for(desired, ctx.limits, ctx.deadzone);
  return {stick, map_input(stick, ctx.limits, ctx.deadzone)};
}

NoisyGoalSeekPolicy::NoisyGoalSeekPolicy(std::uint64_t seed, double amplitude,
                                         GoalSeekParams params)
    : base_(params), rng_(derive_seed(seed, 1)), amplitude_(amplitude) {}

OperatorInput NoisyGoalSeekPolicy::input(const PolicyContext& ctx) {
  const OperatorInput clean = base_.input(ctx);
  // First-order filtered noise stays within +/- amplitude.
  noise_ = noise_ * 0.8 +
           Vec2{rng_.uniform(-amplitude_, amplitude_), rng_.uniform(-amplitude_, amplitude_)} * 0.2;
  const StickInput stick{clean.stick.axis_x + noise_.x, clean.stick.axis_y + noise_.y};
  return {stick, map_input(stick, ctx.limits, ctx.deadzone)};
}

OperatorInput CompliantPolicy::finalize(const OperatorInput& intent,
                                        const AssistanceOutput& assistance,
                                        const PolicyContext& ctx) {
  if (!assistance.v_opt_twist) return intent;
  const Twist cmd = *assistance.v_opt_twist;
  return {stick_for(cmd, ctx.limits, ctx.deadzone), cmd};
}

OperatorInput ReplayPolicy::input(const PolicyContext& ctx) {
  if (ctx.tick < inputs_.size()) return inputs_[ctx.tick];
  return {};
}

bool InputMailbox::post(const LiveInput& input) {
  std::lock_guard lock(mutex_);
  if (any_ && input.seq <= last_seq_) return false;
  any_ = true;
  last_seq_ = input.seq;
  pending_ = input;
  return true;
}

std::optional<LiveInput> InputMailbox::drain() {
  std::lock_guard lock(mutex_);
  return std::exchange(pending_, std::nullopt);
}

std::uint64_t InputMailbox::last_seq() const {
  std::lock_guard lock(mutex_);
  return last_seq_;
}

OperatorInput LivePolicy::input(const PolicyContext& ctx) {
  if (auto latest = mailbox_->drain()) last_ = latest;
  const StickInput stick = last_ ? last_->stick : StickInput{};
  return {stick, map_input(stick, ctx.limits, ctx.deadzone)};
}

}  // namespace socnav
