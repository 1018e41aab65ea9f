#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "socnav/assistance.hpp"
#include "socnav/rng.hpp"
#include "socnav/robot_model.hpp"

namespace socnav {

/// What an operator sends in one tick: the stick and the twist it maps to.
struct OperatorInput {
  StickInput stick;
  Twist twist;

  friend bool operator==(const OperatorInput&, const OperatorInput&) = default;
};

/// Read-only view handed to policies each tick.
struct PolicyContext {
  std::size_t tick = 0;
  double t = 0.0;
  const RobotState& robot;
  Vec2 goal;
  const SpeedLimits& limits;
  double deadzone = 0.0;
};

class OperatorPolicy {
 public:
  virtual ~OperatorPolicy() = default;

  virtual std::string name() const = 0;

  /// The operator's command before seeing this tick's assistance.
  virtual OperatorInput input(const PolicyContext& ctx) = 0;

  /// The command actually sent once assistance is available. Default: unchanged.
  virtual OperatorInput finalize(const OperatorInput& intent, const AssistanceOutput& assistance,
                                 const PolicyContext& ctx);
};

struct GoalSeekParams {
  double cruise_fraction = 0.5;  // of v_max
  double heading_gain = 1.5;     // rad/s per rad of heading error
};

// Proportional heading controller toward the goal. Drives forward only when the
// goal is within +/-90 degrees of the heading.
class GoalSeekPolicy : public OperatorPolicy {
 public:
  explicit GoalSeekPolicy(GoalSeekParams params = {}) : params_(params) {}
  std::string name() const override { return "goal_seek"; }
  OperatorInput input(const PolicyContext& ctx) override;

 private:
  GoalSeekParams params_;
};

// Goal seeking plus low-pass filtered bounded stick noise from a seeded stream.
class NoisyGoalSeekPolicy : public OperatorPolicy {
 public:
  NoisyGoalSeekPolicy(std::uint64_t seed, double amplitude = 0.3, GoalSeekParams params = {});
  std::string name() const override { return "noisy"; }
  OperatorInput input(const PolicyContext& ctx) override;

 private:
  GoalSeekPolicy base_;
  SeededRng rng_;
  double amplitude_;
  Vec2 noise_;
};

// Forms a goal-seeking intent, then adopts the assistance's optimal command.
class CompliantPolicy : public OperatorPolicy {
 public:
  explicit CompliantPolicy(GoalSeekParams params = {}) : base_(params) {}
  std::string name() const override { return "compliant"; }
  OperatorInput input(const PolicyContext& ctx) override { return base_.input(ctx); }
  OperatorInput finalize(const OperatorInput& intent, const AssistanceOutput& assistance,
                         const PolicyContext& ctx) override;

 private:
  GoalSeekPolicy base_;
};

// Plays back recorded commands tick by tick; zero after the recording ends.
class ReplayPolicy : public OperatorPolicy {
 public:
  explicit ReplayPolicy(std::vector<OperatorInput> inputs) : inputs_(std::move(inputs)) {}
  std::string name() const override { return "replay"; }
  OperatorInput input(const PolicyContext& ctx) override;

 private:
  std::vector<OperatorInput> inputs_;
};

/// Operator stick sample as received from a live client.
struct LiveInput {
  std::uint64_t seq = 0;
  StickInput stick;
};

// Single-producer mailbox between the network side and the tick loop. Only the
// highest-seq input posted since the last drain survives.
class InputMailbox {
 public:
  // Returns false (and drops the input) when seq does not advance.
  bool post(const LiveInput& input);
  std::optional<LiveInput> drain();
  std::uint64_t last_seq() const;

 private:
  mutable std::mutex mutex_;
  std::optional<LiveInput> pending_;
  std::uint64_t last_seq_ = 0;
  bool any_ = false;
};

// Holds the latest stick from the mailbox between messages.
class LivePolicy : public OperatorPolicy {
 public:
  explicit LivePolicy(std::shared_ptr<InputMailbox> mailbox) : mailbox_(std::move(mailbox)) {}
  std::string name() const override { return "live"; }
  OperatorInput input(const PolicyContext& ctx) override;
  std::optional<LiveInput> last_applied() const { return last_; }

 private:
  std::shared_ptr<InputMailbox> mailbox_;
  std::optional<LiveInput> last_;
};

}  // namespace socnav
