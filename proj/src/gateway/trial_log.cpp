#include "socnav/gateway/trial_log.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace socnav::gateway {
namespace {

Json vec(Vec2 v) { return Json::array({v.x, v.y}); }
Vec2 vec_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
Json twist(Twist t) { return Json::array({t.linear, t.angular}); }
Twist twist_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

// JSON has no infinity; null stands for "unlimited".
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double finite_or_inf(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <typename T>
Json optional_json(const std::optional<T>& v, Json (*convert)(T)) {
  return v ? convert(*v) : Json(nullptr);
}

Json pose(const Pose2& p) { return {{"x", p.position.x}, {"y", p.position.y}, {"heading", p.heading}}; }
Pose2 pose_from(const Json& j) {
  return Pose2(j.at("x").get<double>(), j.at("y").get<double>(), j.at("heading").get<double>());
}

Json poses(const std::vector<Pose2>& ps) {
  Json arr = Json::array();
  for (const auto& p : ps) arr.push_back(Json::array({p.position.x, p.position.y, p.heading}));
  return arr;
}

std::vector<Pose2> poses_from(const Json& j) {
  std::vector<Pose2> out;
  for (const auto& p : j) {
    out.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  }
  return out;
}

}  // namespace

RobotState robot_from_json(const Json& j) {
  RobotState r;
  r.pose = pose_from(j);
  r.twist = {j.at("v").get<double>(), j.at("w").get<double>()};
  r.radius = j.at("radius").get<double>();
  return r;
}

PedestrianState pedestrian_from_json(const Json& j) {
  PedestrianState p;
  p.id = j.at("id").get<int>();
  p.position = vec_from(j.at("pos"));
  p.velocity = vec_from(j.at("vel"));
  p.goal = vec_from(j.at("goal"));
  p.desired_speed = j.at("desired_speed").get<double>();
  p.body_radius = j.at("body_radius").get<double>();
  p.personal_radius = j.at("personal_radius").get<double>();
  for (const auto& w : j.at("route")) p.route.push_back(vec_from(w));
  p.cycle_route = j.at("cycle_route").get<bool>();
  p.arrived = j.at("arrived").get<bool>();
  return p;
}

namespace {

Condition condition_from(const Json& j) {
  const auto c = parse_condition(j.get<std::string>());
  if (!c) throw FormatError("unknown condition: " + j.get<std::string>());
  return *c;
}

}  // namespace

AssistanceOutput assistance_from_json(const Json& j) {
  AssistanceOutput a;
  if (!j.at("v_opt_twist").is_null()) a.v_opt_twist = twist_from(j.at("v_opt_twist"));
  if (!j.at("v_opt").is_null()) a.v_opt_planar = vec_from(j.at("v_opt"));
  a.haptic_force = vec_from(j.at("haptic_force"));
  a.guidance_trajectory = poses_from(j.at("guidance_trajectory"));
  a.predicted_trajectory = poses_from(j.at("predicted_trajectory"));
  a.steering_bars = {j.at("steering_bars").at(0).get<double>(),
                     j.at("steering_bars").at(1).get<double>()};
  a.speed_fraction = j.at("speed_fraction").get<double>();
  a.infeasible = j.at("infeasible").get<bool>();
  a.show_guidance = j.at("show_guidance").get<bool>();
  return a;
}

Json to_json(const Segment2& wall) {
  return Json::array({wall.a().x, wall.a().y, wall.b().x, wall.b().y});
}

Segment2 wall_from_json(const Json& j) {
  return {Vec2{j.at(0).get<double>(), j.at(1).get<double>()},
          Vec2{j.at(2).get<double>(), j.at(3).get<double>()}};
}

Json to_json(const RobotState& r) {
  Json j = pose(r.pose);
  j["v"] = r.twist.linear;
  j["w"] = r.twist.angular;
  j["radius"] = r.radius;
  return j;
}

Json to_json(const PedestrianState& p) {
  Json route = Json::array();
  for (const auto& w : p.route) route.push_back(vec(w));
  return {{"id", p.id},
          {"pos", vec(p.position)},
          {"vel", vec(p.velocity)},
          {"goal", vec(p.goal)},
          {"desired_speed", p.desired_speed},
          {"body_radius", p.body_radius},
          {"personal_radius", p.personal_radius},
          {"route", std::move(route)},
          {"cycle_route", p.cycle_route},
          {"arrived", p.arrived}};
}

Json to_json(const AssistanceOutput& a) {
  return {{"v_opt_twist", optional_json<Twist>(a.v_opt_twist, twist)},
          {"v_opt", optional_json<Vec2>(a.v_opt_planar, vec)},
          {"haptic_force", vec(a.haptic_force)},
          {"guidance_trajectory", poses(a.guidance_trajectory)},
          {"predicted_trajectory", poses(a.predicted_trajectory)},
          {"steering_bars", Json::array({a.steering_bars.left, a.steering_bars.right})},
          {"speed_fraction", a.speed_fraction},
          {"infeasible", a.infeasible},
          {"show_guidance", a.show_guidance}};
}

Json to_json(const ScenarioConfig& c) {
  Json walls = Json::array();
  for (const auto& w : c.walls) walls.push_back(to_json(w));
  const auto& r = c.rvo;
  const auto& g = c.guidance;
  return {
      {"layout", to_string(c.layout)},
      {"hall_size", vec(c.hall_size)},
      {"walls", std::move(walls)},
      {"robot_start", pose(c.robot_start)},
      {"robot_radius", c.robot_radius},
      {"goal", vec(c.goal)},
      {"ped_config", to_string(c.ped_config)},
      {"ped_count", c.ped_count},
      {"seed", c.seed},
      {"dt", c.dt},
      {"max_duration", c.max_duration},
      {"goal_threshold", c.goal_threshold},
      {"sfm",
       {{"relaxation_time", c.sfm.relaxation_time},
        {"social_strength", c.sfm.social_strength},
        {"social_range", c.sfm.social_range},
        {"obstacle_strength", c.sfm.obstacle_strength},
        {"obstacle_range", c.sfm.obstacle_range}}},
      {"ped_desired_speed", c.ped_desired_speed},
      {"ped_speed_jitter", c.ped_speed_jitter},
      {"ped_body_radius", c.ped_body_radius},
      {"ped_personal_radius", c.ped_personal_radius},
      {"limits", {{"v_max", c.limits.v_max}, {"w_max", c.limits.w_max}}},
      {"accel",
       {{"linear", finite_or_null(c.accel.linear)}, {"angular", finite_or_null(c.accel.angular)}}},
      {"deadzone", c.deadzone},
      {"rvo",
       {{"weights", Json::array({r.weights.intent, r.weights.smoothness, r.weights.goal})},
        {"alpha", r.alpha},
        {"sensing_range", r.sensing_range},
        {"lookahead", r.lookahead},
        {"n_linear", r.sampling.n_linear},
        {"n_angular", r.sampling.n_angular},
        {"allow_reverse", r.sampling.allow_reverse},
        {"static_margin", r.static_filter.margin},
        {"static_horizon", r.static_filter.horizon},
        {"static_dt", r.static_filter.dt}}},
      {"guidance",
       {{"threshold", g.threshold},
        {"hysteresis", g.hysteresis},
        {"bar_gain", g.bar_gain},
        {"haptic_gain", g.haptic_gain},
        {"horizon", g.horizon},
        {"dt", g.dt}}},
      {"metrics",
       {{"intimate_radius", c.metrics.radii.intimate},
        {"personal_radius", c.metrics.radii.personal},
        {"clearance", c.metrics.clearance == ClearanceMode::Surface ? "surface" : "center"}}},
  };
}

ScenarioConfig scenario_from_json(const Json& j) {
  ScenarioConfig c;
  const auto layout = parse_layout(j.at("layout").get<std::string>());
  const auto ped_config = parse_ped_config(j.at("ped_config").get<std::string>());
  if (!layout || !ped_config) throw FormatError("unknown layout or pedestrian configuration");
  c.layout = *layout;
  c.hall_size = vec_from(j.at("hall_size"));
  for (const auto& w : j.at("walls")) c.walls.push_back(wall_from_json(w));
  c.robot_start = pose_from(j.at("robot_start"));
  c.robot_radius = j.at("robot_radius").get<double>();
  c.goal = vec_from(j.at("goal"));
  c.ped_config = *ped_config;
  c.ped_count = j.at("ped_count").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.dt = j.at("dt").get<double>();
  c.max_duration = j.at("max_duration").get<double>();
  c.goal_threshold = j.at("goal_threshold").get<double>();

  const Json& s = j.at("sfm");
  c.sfm = {s.at("relaxation_time").get<double>(), s.at("social_strength").get<double>(),
           s.at("social_range").get<double>(), s.at("obstacle_strength").get<double>(),
           s.at("obstacle_range").get<double>()};
  c.ped_desired_speed = j.at("ped_desired_speed").get<double>();
  c.ped_speed_jitter = j.at("ped_speed_jitter").get<double>();
  c.ped_body_radius = j.at("ped_body_radius").get<double>();
  c.ped_personal_radius = j.at("ped_personal_radius").get<double>();
  c.limits = {j.at("limits").at("v_max").get<double>(), j.at("limits").at("w_max").get<double>()};
  c.accel = {finite_or_inf(j.at("accel").at("linear")),
             finite_or_inf(j.at("accel").at("angular"))};
  c.deadzone = j.at("deadzone").get<double>();

  const Json& r = j.at("rvo");
  c.rvo.weights = {r.at("weights").at(0).get<double>(), r.at("weights").at(1).get<double>(),
                   r.at("weights").at(2).get<double>()};
  c.rvo.alpha = r.at("alpha").get<double>();
  c.rvo.sensing_range = r.at("sensing_range").get<double>();
  c.rvo.lookahead = r.at("lookahead").get<double>();
  c.rvo.sampling = {r.at("n_linear").get<int>(), r.at("n_angular").get<int>(),
                    r.at("allow_reverse").get<bool>()};
  c.rvo.static_filter = {r.at("static_margin").get<double>(), r.at("static_horizon").get<double>(),
                         r.at("static_dt").get<double>()};

  const Json& g = j.at("guidance");
  c.guidance = {g.at("threshold").get<double>(), g.at("hysteresis").get<double>(),
                g.at("bar_gain").get<double>(),  g.at("haptic_gain").get<double>(),
                g.at("horizon").get<double>(),   g.at("dt").get<double>()};

  const Json& m = j.at("metrics");
  c.metrics.radii = {m.at("intimate_radius").get<double>(), m.at("personal_radius").get<double>()};
  const auto mode = m.at("clearance").get<std::string>();
  if (mode != "surface" && mode != "center") throw FormatError("unknown clearance mode " + mode);
  c.metrics.clearance = mode == "surface" ? ClearanceMode::Surface : ClearanceMode::Center;
  return c;
}

Json to_json(const TickRecord& r) {
  Json peds = Json::array();
  for (const auto& p : r.peds) peds.push_back(to_json(p));
  return {{"type", "tick"},
          {"t", r.t},
          {"robot", to_json(r.robot)},
          {"peds", std::move(peds)},
          {"stick", Json::array({r.stick.axis_x, r.stick.axis_y})},
          {"cmd", twist(r.v_cmd)},
          {"v_pref", vec(r.v_pref_planar)},
          {"v_opt_twist", optional_json<Twist>(r.v_opt_twist, twist)},
          {"v_opt", optional_json<Vec2>(r.v_opt_planar, vec)},
          {"haptic_force", vec(r.haptic_force)},
          {"steering_bars", Json::array({r.steering_bars.left, r.steering_bars.right})},
          {"show_guidance", r.show_guidance},
          {"condition", to_string(r.condition)},
          {"infeasible", r.infeasible}};
}

TickRecord tick_from_json(const Json& j) {
  TickRecord r;
  r.t = j.at("t").get<double>();
  r.robot = robot_from_json(j.at("robot"));
  for (const auto& p : j.at("peds")) r.peds.push_back(pedestrian_from_json(p));
  r.stick = StickInput(j.at("stick").at(0).get<double>(), j.at("stick").at(1).get<double>());
  r.v_cmd = twist_from(j.at("cmd"));
  r.v_pref_planar = vec_from(j.at("v_pref"));
  if (!j.at("v_opt_twist").is_null()) r.v_opt_twist = twist_from(j.at("v_opt_twist"));
  if (!j.at("v_opt").is_null()) r.v_opt_planar = vec_from(j.at("v_opt"));
  r.haptic_force = vec_from(j.at("haptic_force"));
  r.steering_bars = {j.at("steering_bars").at(0).get<double>(),
                     j.at("steering_bars").at(1).get<double>()};
  r.show_guidance = j.at("show_guidance").get<bool>();
  r.condition = condition_from(j.at("condition"));
  r.infeasible = j.at("infeasible").get<bool>();
  return r;
}

Json to_json(const TrialMetrics& m) {
  return {{"intimate_intrusions", m.intimate_intrusions},
          {"personal_intrusions", m.personal_intrusions},
          {"path_length", m.path_length},
          {"trial_time", m.trial_time},
          {"mean_disagreement",
           m.mean_disagreement ? Json(*m.mean_disagreement) : Json(nullptr)}};
}

TrialMetrics metrics_from_json(const Json& j) {
  TrialMetrics m;
  m.intimate_intrusions = j.at("intimate_intrusions").get<int>();
  m.personal_intrusions = j.at("personal_intrusions").get<int>();
  m.path_length = j.at("path_length").get<double>();
  m.trial_time = j.at("trial_time").get<double>();
  if (!j.at("mean_disagreement").is_null()) {
    m.mean_disagreement = j.at("mean_disagreement").get<double>();
  }
  return m;
}

void write_trial_log(std::ostream& out, const TrialLogFile& file) {
  const Json header{{"type", "header"},
                    {"schema", kTrialLogSchema},
                    {"version", file.header.version},
                    {"condition", to_string(file.header.condition)},
                    {"policy", file.header.policy},
                    {"seed", file.header.config.seed},
                    {"config", to_json(file.header.config)}};
  out << header.dump() << '\n';
  for (const auto& tick : file.ticks) out << to_json(tick).dump() << '\n';
  const Json footer{{"type", "end"},
                    {"reason", to_string(file.reason)},
                    {"complete", file.reason == EndReason::Goal},
                    {"metrics", to_json(file.metrics)}};
  out << footer.dump() << '\n';
}

std::string serialize_trial_log(const TrialLogFile& file) {
  std::ostringstream out;
  write_trial_log(out, file);
  return out.str();
}

TrialLogFile parse_trial_log(std::istream& in) {
  TrialLogFile file;
  bool have_header = false;
  bool have_footer = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        if (j.at("schema").get<std::string>() != kTrialLogSchema) {
          throw FormatError("unsupported schema " + j.at("schema").get<std::string>());
        }
        file.header.config = scenario_from_json(j.at("config"));
        file.header.condition = condition_from(j.at("condition"));
        file.header.policy = j.at("policy").get<std::string>();
        file.header.version = j.at("version").get<std::string>();
        have_header = true;
      } else if (type == "tick") {
        if (!have_header || have_footer) throw FormatError("tick record out of place");
        file.ticks.push_back(tick_from_json(j));
      } else if (type == "end") {
        const auto reason = parse_end_reason(j.at("reason").get<std::string>());
        if (!reason) throw FormatError("unknown end reason");
        file.reason = *reason;
        file.metrics = metrics_from_json(j.at("metrics"));
        have_footer = true;
      } else {
        throw FormatError("unknown record type " + type);
      }
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw FormatError("missing header record");
  if (!have_footer) throw FormatError("missing end record");
  return file;
}

void save_trial_log(const std::filesystem::path& path, const TrialLogFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_trial_log(out, file);
}

TrialLogFile load_trial_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return parse_trial_log(in);
}

TrialLogFile make_log_file(const ScenarioConfig& config, Condition condition,
                           const std::string& policy, TrialResult result) {
  TrialLogFile file;
  file.header = {config, condition, policy, kArtifactVersion};
  file.ticks = std::move(result.log);
  file.reason = result.reason;
  file.metrics = result.metrics;
  return file;
}

}  // namespace socnav::gateway
