#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "socnav/assistance.hpp"
#include "socnav/geometry.hpp"
#include "socnav/metrics.hpp"
#include "socnav/pedestrians.hpp"
#include "socnav/robot_model.hpp"
#include "socnav/sa_rvo.hpp"

namespace socnav {

enum class Layout { HallA, HallB };
enum class PedConfig { Approach, Crossing, Random };

std::string_view to_string(Layout l);
std::string_view to_string(PedConfig p);
std::optional<Layout> parse_layout(std::string_view s);        // "a" / "b" / "hall_a" / "hall_b"
std::optional<PedConfig> parse_ped_config(std::string_view s);  // approach / crossing / random

struct ScenarioConfig {
  Layout layout = Layout::HallA;
  Vec2 hall_size{15.0, 10.0};
  std::vector<Segment2> walls;
  Pose2 robot_start{1.5, 5.0, 0.0};
  double robot_radius = 0.28;
  Vec2 goal{13.5, 5.0};
  PedConfig ped_config = PedConfig::Crossing;
  int ped_count = 6;
  std::uint64_t seed = 0;
  double dt = 0.05;
  double max_duration = 120.0;
  double goal_threshold = 0.5;

  SfmParams sfm;
  double ped_desired_speed = 1.2;
  double ped_speed_jitter = 0.1;  // fraction, uniform +/- around desired speed
  double ped_body_radius = 0.3;
  double ped_personal_radius = 0.45;  // center-measured cone radius contribution

  SpeedLimits limits;
  AccelLimits accel;
  double deadzone = 0.1;

  RvoParams rvo;
  GuidanceParams guidance;
  MetricsParams metrics;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Hall walls and tables for a layout.
std::vector<Segment2> layout_walls(Layout layout, Vec2 hall_size);

// Defaults for a named scenario: walls from the layout, 6 pedestrians for
// approach/crossing and 8 for random.
ScenarioConfig default_scenario(PedConfig ped_config, Layout layout, std::uint64_t seed);

// Throws ConfigError when the config breaks an invariant.
void validate(const ScenarioConfig& config);

struct World {
  RobotState robot;
  std::vector<PedestrianState> peds;
  std::vector<Segment2> walls;
  Vec2 goal;

  friend bool operator==(const World&, const World&) = default;
};

// Initial world for a config. Deterministic in (config, seed). Throws
// ConfigError when pedestrian placement needs more than 10^4 rejections.
World build_scenario(const ScenarioConfig& config);

}  // namespace socnav
