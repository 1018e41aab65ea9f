#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "socnav/gateway/trial_log.hpp"
#include "socnav/operator.hpp"

namespace socnav::gateway {

/// Bad or conflicting flags. Maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A replay file recorded under a different scenario or time step. Exit status 3.
class ReplayMismatch : public std::runtime_error {
 public:
  explicit ReplayMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class PolicyKind { GoalSeek, Compliant, Noisy, Replay };

struct PolicySpec {
  PolicyKind kind = PolicyKind::GoalSeek;
  std::filesystem::path replay_file;

  std::string name() const;
};

// goal_seek | compliant | noisy | replay:<file>
std::optional<PolicySpec> parse_policy(const std::string& s);

// Optional knobs layered over the named scenario's defaults.
struct ScenarioOverrides {
  std::optional<int> ped_count;
  std::optional<double> dt;
  std::optional<double> max_duration;
  std::optional<double> alpha;
  std::optional<RvoWeights> weights;
  std::optional<double> ped_personal_radius;
};

struct BatchOptions {
  PedConfig scenario = PedConfig::Crossing;
  Layout layout = Layout::HallA;
  Condition condition = Condition::MC;
  PolicySpec policy;
  std::uint64_t seed = 0;
  int repeat = 1;
  std::filesystem::path out_dir = ".";
  ScenarioOverrides overrides;
};

struct BatchTrial {
  std::uint64_t seed = 0;
  std::filesystem::path log_file;
  EndReason reason = EndReason::Timeout;
  TrialMetrics metrics;
};

struct BatchReport {
  std::vector<BatchTrial> trials;
  std::filesystem::path summary_file;
};

ScenarioConfig make_config(PedConfig scenario, Layout layout, std::uint64_t seed,
                           const ScenarioOverrides& overrides);

// {scenario}_{layout}_{condition}_{policy}_seed{N}.jsonl
std::string log_file_name(const ScenarioConfig& config, Condition condition,
                          const std::string& policy);

// Throws UsageError, ReplayMismatch, ConfigError or FormatError.
std::unique_ptr<OperatorPolicy> make_policy(const PolicySpec& spec, const ScenarioConfig& config);

// Runs seeds seed .. seed+repeat-1, writes one log per trial plus summary.jsonl.
BatchReport run_batch(const BatchOptions& options);

// Per-trial lines, then the mean and the sample standard deviation of every
// metric. A statistic is null when any input is null or, for the standard
// deviation, when there are fewer than two trials.
void write_summary(std::ostream& out, const BatchOptions& options,
                   const std::vector<BatchTrial>& trials);

}  // namespace socnav::gateway
