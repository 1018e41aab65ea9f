#include "socnav/gateway/batch.hpp"

#include <cmath>
#include <fstream>

#include "socnav/errors.hpp"

namespace socnav::gateway {
namespace {

struct Stat {
  std::optional<double> mean;
  std::optional<double> std;
};

Stat stats(const std::vector<std::optional<double>>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (const auto& x : xs) {
    if (!x) return s;
    sum += *x;
  }
  const double n = static_cast<double>(xs.size());
  s.mean = sum / n;
  if (xs.size() < 2) return s;
  double sq = 0.0;
  for (const auto& x : xs) sq += (*x - *s.mean) * (*x - *s.mean);
  s.std = std::sqrt(sq / (n - 1.0));
  return s;
}

Json nullable(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string PolicySpec::name() const {
  switch (kind) {
    case PolicyKind::GoalSeek:
      return "goal_seek";
    case PolicyKind::Compliant:
      return "compliant";
    case PolicyKind::Noisy:
      return "noisy";
    case PolicyKind::Replay:
      return "replay";
  }
  return "goal_seek";
}

std::optional<PolicySpec> parse_policy(const std::string& s) {
  if (s == "goal_seek") return PolicySpec{PolicyKind::GoalSeek, {}};
  if (s == "compliant") return PolicySpec{PolicyKind::Compliant, {}};
  if (s == "noisy" || s == "noisy_goal_seek") return PolicySpec{PolicyKind::Noisy, {}};
  const std::string prefix = "replay:";
  if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size()) {
    return PolicySpec{PolicyKind::Replay, s.substr(prefix.size())};
  }
  return std::nullopt;
}

ScenarioConfig make_config(PedConfig scenario, Layout layout, std::uint64_t seed,
                           const ScenarioOverrides& overrides) {
  ScenarioConfig c = default_scenario(scenario, layout, seed);
  if (overrides.ped_count) c.ped_count = *overrides.ped_count;
  if (overrides.dt) c.dt = *overrides.dt;
  if (overrides.max_duration) c.max_duration = *overrides.max_duration;
  if (overrides.alpha) c.rvo.alpha = *overrides.alpha;
  if (overrides.weights) c.rvo.weights = *overrides.weights;
  if (overrides.ped_personal_radius) c.ped_personal_radius = *overrides.ped_personal_radius;
  validate(c);
  return c;
}

std::string log_file_name(const ScenarioConfig& config, Condition condition,
                          const std::string& policy) {
  return std::string(to_string(config.ped_config)) + "_" + std::string(to_string(config.layout)) +
         "_" + std::string(to_string(condition)) + "_" + policy + "_seed" +
         std::to_string(config.seed) + ".jsonl";
}

std::unique_ptr<OperatorPolicy> make_policy(const PolicySpec& spec, const ScenarioConfig& config) {
  switch (spec.kind) {
    case PolicyKind::GoalSeek:
      return std::make_unique<GoalSeekPolicy>();
    case PolicyKind::Compliant:
      return std::make_unique<CompliantPolicy>();
    case PolicyKind::Noisy:
      return std::make_unique<NoisyGoalSeekPolicy>(config.seed);
    case PolicyKind::Replay: {
      const TrialLogFile recorded = load_trial_log(spec.replay_file);
      const ScenarioConfig& rc = recorded.header.config;
      if (rc.dt != config.dt) {
        throw ReplayMismatch("replay file dt " + std::to_string(rc.dt) + " differs from " +
                             std::to_string(config.dt));
      }
      if (rc.ped_config != config.ped_config || rc.layout != config.layout) {
        throw ReplayMismatch("replay file was recorded in scenario " +
                             std::string(to_string(rc.ped_config)) + "/" +
                             std::string(to_string(rc.layout)));
      }
      std::vector<OperatorInput> inputs;
      inputs.reserve(recorded.ticks.size());
      for (const auto& t : recorded.ticks) inputs.push_back({t.stick, t.v_cmd});
      return std::make_unique<ReplayPolicy>(std::move(inputs));
    }
  }
  throw UsageError("unknown policy");
}

BatchReport run_batch(const BatchOptions& options) {
  if (options.repeat < 1) throw UsageError("--repeat must be at least 1");
  if (options.policy.kind == PolicyKind::Replay && options.repeat != 1) {
    throw UsageError("a replay policy plays exactly one trial; use --repeat 1");
  }
  // Validate every config before running anything so flag errors cost nothing.
  std::vector<ScenarioConfig> configs;
  for (int k = 0; k < options.repeat; ++k) {
    try {
      configs.push_back(make_config(options.scenario, options.layout,
                                    options.seed + static_cast<std::uint64_t>(k),
                                    options.overrides));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }

  std::filesystem::create_directories(options.out_dir);
  BatchReport report;
  const std::string policy_name = options.policy.name();
  for (const auto& config : configs) {
    auto policy = make_policy(options.policy, config);
    TrialResult result = run_trial(config, *policy, options.condition);
    BatchTrial trial{config.seed, options.out_dir / log_file_name(config, options.condition,
                                                                  policy_name),
                     result.reason, result.metrics};
    save_trial_log(trial.log_file,
                   make_log_file(config, options.condition, policy_name, std::move(result)));
    report.trials.push_back(std::move(trial));
  }

  report.summary_file = options.out_dir / "summary.jsonl";
  std::ofstream out(report.summary_file, std::ios::binary);
  if (!out) throw FormatError("cannot write " + report.summary_file.string());
  write_summary(out, options, report.trials);
  return report;
}

void write_summary(std::ostream& out, const BatchOptions& options,
                   const std::vector<BatchTrial>& trials) {
  const Json header{{"type", "header"},
                    {"schema", kSummarySchema},
                    {"version", kArtifactVersion},
                    {"scenario", to_string(options.scenario)},
                    {"layout", to_string(options.layout)},
                    {"condition", to_string(options.condition)},
                    {"policy", options.policy.name()},
                    {"first_seed", options.seed},
                    {"repeat", trials.size()}};
  out << header.dump() << '\n';

  std::vector<std::optional<double>> intimate, personal, length, time, disagreement;
  for (const auto& t : trials) {
    Json line = to_json(t.metrics);
    line["type"] = "trial";
    line["seed"] = t.seed;
    line["log"] = t.log_file.filename().string();
    line["reason"] = to_string(t.reason);
    out << line.dump() << '\n';
    intimate.emplace_back(t.metrics.intimate_intrusions);
    personal.emplace_back(t.metrics.personal_intrusions);
    length.emplace_back(t.metrics.path_length);
    time.emplace_back(t.metrics.trial_time);
    disagreement.push_back(t.metrics.mean_disagreement);
  }

  const Stat si = stats(intimate), sp = stats(personal), sl = stats(length), st = stats(time),
             sd = stats(disagreement);
  auto row = [&](const char* type, auto pick) {
    return Json{{"type", type},
                {"intimate_intrusions", nullable(pick(si))},
                {"personal_intrusions", nullable(pick(sp))},
                {"path_length", nullable(pick(sl))},
                {"trial_time", nullable(pick(st))},
                {"mean_disagreement", nullable(pick(sd))}};
  };
  out << row("mean", [](const Stat& s) { return s.mean; }).dump() << '\n';
  out << row("std", [](const Stat& s) { return s.std; }).dump() << '\n';
}

}  // namespace socnav::gateway
