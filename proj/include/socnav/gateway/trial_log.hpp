#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "socnav/metrics.hpp"
#include "socnav/scenario.hpp"
#include "socnav/trial.hpp"

namespace socnav::gateway {

using Json = nlohmann::json;

inline constexpr const char* kTrialLogSchema = "socnav.trial-log/1";
inline constexpr const char* kSummarySchema = "socnav.summary/1";
inline constexpr const char* kArtifactVersion = "0.1.0";

/// Parse or schema failure in a persisted file.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

struct TrialLogHeader {
  ScenarioConfig config;
  Condition condition = Condition::MC;
  std::string policy;
  std::string version = kArtifactVersion;

  friend bool operator==(const TrialLogHeader&, const TrialLogHeader&) = default;
};

// One trial per file, one JSON object per line: a header, one record per
// tick, then a footer with the end reason and the metrics.
struct TrialLogFile {
  TrialLogHeader header;
  std::vector<TickRecord> ticks;
  EndReason reason = EndReason::Timeout;
  TrialMetrics metrics;

  friend bool operator==(const TrialLogFile&, const TrialLogFile&) = default;
};

Json to_json(const ScenarioConfig& c);
ScenarioConfig scenario_from_json(const Json& j);
Json to_json(const TickRecord& r);
TickRecord tick_from_json(const Json& j);
Json to_json(const TrialMetrics& m);
TrialMetrics metrics_from_json(const Json& j);
Json to_json(const PedestrianState& p);
PedestrianState pedestrian_from_json(const Json& j);
Json to_json(const RobotState& r);
RobotState robot_from_json(const Json& j);
Json to_json(const AssistanceOutput& a);
AssistanceOutput assistance_from_json(const Json& j);
Json to_json(const Segment2& wall);
Segment2 wall_from_json(const Json& j);

void write_trial_log(std::ostream& out, const TrialLogFile& file);
std::string serialize_trial_log(const TrialLogFile& file);
// Throws FormatError on malformed input or a schema mismatch.
TrialLogFile parse_trial_log(std::istream& in);

void save_trial_log(const std::filesystem::path& path, const TrialLogFile& file);
TrialLogFile load_trial_log(const std::filesystem::path& path);

TrialLogFile make_log_file(const ScenarioConfig& config, Condition condition,
                           const std::string& policy, TrialResult result);

}  // namespace socnav::gateway
