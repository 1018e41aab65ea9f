#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "socnav/assistance.hpp"
#include "socnav/metrics.hpp"
#include "socnav/operator.hpp"
#include "socnav/scenario.hpp"

namespace socnav {

enum class EndReason { Goal, Timeout };

std::string_view to_string(EndReason r);
std::optional<EndReason> parse_end_reason(std::string_view s);

struct TrialResult {
  std::vector<TickRecord> log;
  TrialMetrics metrics;
  EndReason reason = EndReason::Timeout;

  bool complete() const { return reason == EndReason::Goal; }
};

// Fixed-step closed loop for one trial. Each tick: query the operator, run the
// assistance (skipped in MC), log, then actuate the operator's command and move
// the pedestrians. The assistance never touches the actuated command.
class TrialRunner {
 public:
  // The policy must outlive the runner.
  TrialRunner(ScenarioConfig config, Condition condition, OperatorPolicy& policy);

  bool finished() const { return reason_.has_value(); }
  std::optional<EndReason> reason() const { return reason_; }

  // Advances one tick and returns its record. Must not be called once finished.
  const TickRecord& tick();

  const World& world() const { return world_; }
  const AssistanceOutput& last_assistance() const { return assistance_; }
  const std::vector<TickRecord>& log() const { return log_; }
  const ScenarioConfig& config() const { return config_; }
  Condition condition() const { return condition_; }

  // Metrics of the log so far.
  TrialMetrics metrics() const;
  TrialResult take_result() &&;

 private:
  ScenarioConfig config_;
  Condition condition_;
  OperatorPolicy& policy_;
  World world_;
  std::vector<TickRecord> log_;
  AssistanceOutput assistance_;
  Vec2 prev_opt_;
  bool gate_shown_ = false;
  std::size_t tick_ = 0;
  std::optional<EndReason> reason_;
};

TrialResult run_trial(const ScenarioConfig& config, OperatorPolicy& policy, Condition condition);

}  // namespace socnav
