#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "socnav/assistance.hpp"
#include "socnav/metrics.hpp"
#include "socnav/operator.hpp"
#include "socnav/scenario.hpp"
#include "socnav/trial.hpp"

// Live session protocol. Every frame is one JSON object carrying the protocol
// version "v" and a "type" tag. Unknown fields are ignored; unknown tags and
// other versions are rejected.
namespace socnav::gateway::wire {

inline constexpr int kProtocolVersion = 1;

class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

struct ClientHello {
  std::string name;

  friend bool operator==(const ClientHello&, const ClientHello&) = default;
};

struct StartTrial {
  PedConfig scenario = PedConfig::Crossing;
  Condition condition = Condition::MC;
  std::uint64_t seed = 0;
  Layout layout = Layout::HallA;
  std::optional<double> max_duration;  // s
  std::optional<int> ped_count;

  friend bool operator==(const StartTrial&, const StartTrial&) = default;
};

struct Input {
  std::uint64_t seq = 0;
  double axis_x = 0.0;
  double axis_y = 0.0;
  std::uint32_t buttons = 0;

  friend bool operator==(const Input&, const Input&) = default;
};

struct AppliedInput {
  std::uint64_t seq = 0;
  double axis_x = 0.0;
  double axis_y = 0.0;

  friend bool operator==(const AppliedInput&, const AppliedInput&) = default;
};

// The scene is repeated in every update so a reconnecting client can draw from
// any single message.
struct StateUpdate {
  std::uint64_t tick = 0;
  double t = 0.0;
  Condition condition = Condition::MC;
  RobotState robot;
  std::vector<PedestrianState> pedestrians;
  AssistanceOutput assistance;
  TrialMetrics metrics;
  std::optional<AppliedInput> applied_input;
  std::vector<Segment2> walls;
  Vec2 goal;

  friend bool operator==(const StateUpdate&, const StateUpdate&) = default;
};

struct TrialEnd {
  TrialMetrics metrics;
  EndReason reason = EndReason::Timeout;
  std::string log_file;

  friend bool operator==(const TrialEnd&, const TrialEnd&) = default;
};

struct Error {
  std::string code;  // busy | protocol | config | state
  std::string text;

  friend bool operator==(const Error&, const Error&) = default;
};

using Message = std::variant<ClientHello, StartTrial, Input, StateUpdate, TrialEnd, Error>;

std::string_view tag(const Message& m);
nlohmann::json to_json(const Message& m);
std::string encode(const Message& m);

// Throws ProtocolError on malformed JSON, a missing or mistyped field, an
// unknown tag or a version mismatch.
Message decode(std::string_view text);

}  // namespace socnav::gateway::wire
