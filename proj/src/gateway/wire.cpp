#include "socnav/gateway/wire.hpp"

#include <cmath>

#include "socnav/gateway/trial_log.hpp"

namespace socnav::gateway::wire {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double finite(const Json& j, const char* key) {
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ProtocolError(std::string(key) + " must be finite");
  return v;
}

Json body(const ClientHello& m) { return {{"name", m.name}}; }

Json body(const StartTrial& m) {
  Json j{{"scenario", to_string(m.scenario)},
         {"condition", to_string(m.condition)},
         {"seed", m.seed},
         {"layout", to_string(m.layout)}};
  if (m.max_duration) j["max_duration"] = *m.max_duration;
  if (m.ped_count) j["ped_count"] = *m.ped_count;
  return j;
}

Json body(const Input& m) {
  return {{"seq", m.seq}, {"axis_x", m.axis_x}, {"axis_y", m.axis_y}, {"buttons", m.buttons}};
}

Json body(const StateUpdate& m) {
  Json peds = Json::array();
  for (const auto& p : m.pedestrians) peds.push_back(gateway::to_json(p));
  Json walls = Json::array();
  for (const auto& w : m.walls) walls.push_back(gateway::to_json(w));
  Json applied = nullptr;
  if (m.applied_input) {
    applied = {{"seq", m.applied_input->seq},
               {"axis_x", m.applied_input->axis_x},
               {"axis_y", m.applied_input->axis_y}};
  }
  return {{"tick", m.tick},
          {"t", m.t},
          {"condition", to_string(m.condition)},
          {"robot", gateway::to_json(m.robot)},
          {"pedestrians", std::move(peds)},
          {"assistance", gateway::to_json(m.assistance)},
          {"metrics", gateway::to_json(m.metrics)},
          {"applied_input", std::move(applied)},
          {"walls", std::move(walls)},
          {"goal", Json::array({m.goal.x, m.goal.y})}};
}

Json body(const TrialEnd& m) {
  return {{"metrics", gateway::to_json(m.metrics)},
          {"reason", to_string(m.reason)},
          {"log_file", m.log_file}};
}

Json body(const Error& m) { return {{"code", m.code}, {"text", m.text}}; }

Condition condition_field(const Json& j) {
  const auto c = parse_condition(j.at("condition").get<std::string>());
  if (!c) throw ProtocolError("unknown condition");
  return *c;
}

Message decode_object(const Json& j) {
  if (!j.is_object()) throw ProtocolError("message must be an object");
  if (!j.contains("v") || !j.at("v").is_number_integer() ||
      j.at("v").get<int>() != kProtocolVersion) {
    throw ProtocolError("unsupported protocol version");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "client_hello") return ClientHello{j.value("name", std::string{})};
  if (type == "start_trial") {
    StartTrial m;
    const auto scenario = parse_ped_config(j.at("scenario").get<std::string>());
    if (!scenario) throw ProtocolError("unknown scenario");
    m.scenario = *scenario;
    m.condition = condition_field(j);
    m.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("layout")) {
      const auto layout = parse_layout(j.at("layout").get<std::string>());
      if (!layout) throw ProtocolError("unknown layout");
      m.layout = *layout;
    }
    if (j.contains("max_duration")) m.max_duration = finite(j, "max_duration");
    if (j.contains("ped_count")) m.ped_count = j.at("ped_count").get<int>();
    return m;
  }
  if (type == "input") {
    Input m;
    m.seq = j.at("seq").get<std::uint64_t>();
    m.axis_x = finite(j, "axis_x");
    m.axis_y = finite(j, "axis_y");
    m.buttons = j.value("buttons", std::uint32_t{0});
    return m;
  }
  if (type == "state_update") {
    StateUpdate m;
    m.tick = j.at("tick").get<std::uint64_t>();
    m.t = j.at("t").get<double>();
    m.condition = condition_field(j);
    m.robot = robot_from_json(j.at("robot"));
    for (const auto& p : j.at("pedestrians")) m.pedestrians.push_back(pedestrian_from_json(p));
    m.assistance = assistance_from_json(j.at("assistance"));
    m.metrics = metrics_from_json(j.at("metrics"));
    if (const auto& a = j.at("applied_input"); !a.is_null()) {
      m.applied_input = AppliedInput{a.at("seq").get<std::uint64_t>(),
                                     a.at("axis_x").get<double>(), a.at("axis_y").get<double>()};
    }
    for (const auto& w : j.at("walls")) m.walls.push_back(wall_from_json(w));
    m.goal = {j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>()};
    return m;
  }
  if (type == "trial_end") {
    const auto reason = parse_end_reason(j.at("reason").get<std::string>());
    if (!reason) throw ProtocolError("unknown end reason");
    return TrialEnd{metrics_from_json(j.at("metrics")), *reason,
                    j.value("log_file", std::string{})};
  }
  if (type == "error") {
    return Error{j.at("code").get<std::string>(), j.value("text", std::string{})};
  }
  throw ProtocolError("unknown message type " + type);
}

}  // namespace

std::string_view tag(const Message& m) {
  return std::visit(Overloaded{
                        [](const ClientHello&) { return "client_hello"; },
                        [](const StartTrial&) { return "start_trial"; },
                        [](const Input&) { return "input"; },
                        [](const StateUpdate&) { return "state_update"; },
                        [](const TrialEnd&) { return "trial_end"; },
                        [](const Error&) { return "error"; },
                    },
                    m);
}

nlohmann::json to_json(const Message& m) {
  Json j = std::visit([](const auto& msg) { return body(msg); }, m);
  j["v"] = kProtocolVersion;
  j["type"] = tag(m);
  return j;
}

std::string encode(const Message& m) { return to_json(m).dump(); }

Message decode(std::string_view text) {
  try {
    return decode_object(Json::parse(text));
  } catch (const ProtocolError&) {
    throw;
  } catch (const std::exception& e) {
    throw ProtocolError(e.what());
  }
}

}  // namespace socnav::gateway::wire
