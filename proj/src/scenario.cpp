#include "socnav/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "socnav/errors.hpp"
#include "socnav/rng.hpp"

namespace socnav {
namespace {

constexpr int kMaxPlacementAttempts = 10000;
constexpr double kReferenceWidth = 15.0;
constexpr double kReferenceDepth = 10.0;

struct Rect {
  double x0, y0, x1, y1;
};

// Table footprints in a 15 m x 10 m reference hall. The band y in [3, 7]
// between start and goal stays free in both layouts.
constexpr std::array<Rect, 3> kHallATables{{
    {2.5, 7.0, 4.0, 8.5},
    {2.5, 1.5, 4.0, 3.0},
    {11.5, 7.0, 13.0, 8.5},
}};
constexpr std::array<Rect, 3> kHallBTables{{
    {4.0, 7.0, 5.5, 8.5},
    {11.0, 1.5, 12.5, 3.0},
    {11.0, 7.0, 12.5, 8.5},
}};

void add_rect(std::vector<Segment2>& walls, Rect r) {
  const Vec2 a{r.x0, r.y0}, b{r.x1, r.y0}, c{r.x1, r.y1}, d{r.x0, r.y1};
  walls.emplace_back(a, b);
  walls.emplace_back(b, c);
  walls.emplace_back(c, d);
  walls.emplace_back(d, a);
}

double wall_clearance(Vec2 p, const std::vector<Segment2>& walls) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : walls) best = std::min(best, disc_segment_distance(p, w));
  return best;
}

// Minimum clearance of the straight path a -> b, checked every 0.1 m.
double path_clearance(Vec2 a, Vec2 b, const std::vector<Segment2>& walls) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a).norm() / 0.1)));
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    best = std::min(best, wall_clearance(a + (b - a) * (static_cast<double>(i) / n), walls));
  }
  return best;
}

class Placer {
 public:
  Placer(const ScenarioConfig& config, const std::vector<Segment2>& walls)
      : config_(config), walls_(walls), rng_(derive_seed(config.seed, 0)) {}

  SeededRng& rng() { return rng_; }

  void attempt() {
    if (++attempts_ > kMaxPlacementAttempts) {
      throw ConfigError("pedestrian placement exceeded 10^4 attempts (hall too crowded)");
    }
  }

  bool clear_of_walls(Vec2 p, double min_clearance) const {
    return wall_clearance(p, walls_) >= min_clearance;
  }
  bool clear_of_start(Vec2 p) const {
    return (p - config_.robot_start.position).norm() >= 1.5;
  }
  bool clear_of_peds(Vec2 p, const std::vector<PedestrianState>& peds) const {
    return std::all_of(peds.begin(), peds.end(), [p](const PedestrianState& q) {
      return (q.position - p).norm() >= 1.0;
    });
  }
  const std::vector<Segment2>& walls() const { return walls_; }

 private:
  const ScenarioConfig& config_;
  const std::vector<Segment2>& walls_;
  SeededRng rng_;
  int attempts_ = 0;
};

PedestrianState make_pedestrian(const ScenarioConfig& config, SeededRng& rng, int id, Vec2 start,
                                Vec2 goal) {
  PedestrianState ped;
  ped.id = id;
  ped.position = start;
  ped.goal = goal;
  ped.desired_speed = config.ped_desired_speed *
                      (1.0 + config.ped_speed_jitter * rng.uniform(-1.0, 1.0));
  ped.body_radius = config.ped_body_radius;
  ped.personal_radius = std::max(config.ped_personal_radius, config.ped_body_radius);
  ped.velocity = (goal - start).normalized().value_or(Vec2{}) * ped.desired_speed;
  return ped;
}

// Counter-flow: pedestrians start ahead of the robot and walk to points behind
// its start.
std::vector<PedestrianState> spawn_approach(const ScenarioConfig& config, Placer& placer) {
  auto& rng = placer.rng();
  const double sx = config.hall_size.x / kReferenceWidth;
  const double sy = config.hall_size.y / kReferenceDepth;
  const Vec2 start = config.robot_start.position;
  std::vector<PedestrianState> peds;
  while (static_cast<int>(peds.size()) < config.ped_count) {
    placer.attempt();
    const Vec2 p{rng.uniform(7.0 * sx, 12.5 * sx), rng.uniform(3.5 * sy, 6.5 * sy)};
    const Vec2 g{std::max(1.0, start.x - 0.5), rng.uniform(3.5 * sy, 6.5 * sy)};
    if (!placer.clear_of_walls(p, 1.0) || !placer.clear_of_walls(g, 0.8)) continue;
    if (!placer.clear_of_start(p) || !placer.clear_of_peds(p, peds)) continue;
    peds.push_back(make_pedestrian(config, rng, static_cast<int>(peds.size()), p, g));
  }
  return peds;
}

// Pedestrians walk once along lanes that cut the start-goal line roughly at right
// angles, alternating direction.
std::vector<PedestrianState> spawn_crossing(const ScenarioConfig& config, Placer& placer) {
  auto& rng = placer.rng();
  const double sy = config.hall_size.y / kReferenceDepth;
  const Vec2 start = config.robot_start.position;
  const Vec2 axis = *(config.goal - start).normalized();
  const Vec2 normal{-axis.y, axis.x};
  const double span = (config.goal - start).norm();
  const double half_width = 4.0 * sy;

  std::vector<PedestrianState> peds;
  while (static_cast<int>(peds.size()) < config.ped_count) {
    placer.attempt();
    const double along = rng.uniform(0.125 * span, 0.6 * span);
    const double drift = rng.uniform(-0.5, 0.5);
    const double side = peds.size() % 2 == 0 ? -1.0 : 1.0;
    const Vec2 lane_a = start + axis * along + normal * (side * half_width);
    const Vec2 lane_b = start + axis * (along + drift) - normal * (side * half_width);
    // Lanes sit in the first half of the route and pedestrians start near the
    // lane end, so crossings coincide with the robot's approach.
    const Vec2 p = lane_a + (lane_b - lane_a) * rng.uniform(0.0, 0.25);
    if (path_clearance(lane_a, lane_b, placer.walls()) < 0.8) continue;
    if (!placer.clear_of_start(p) || !placer.clear_of_peds(p, peds)) continue;
    peds.push_back(make_pedestrian(config, rng, static_cast<int>(peds.size()), p, lane_b));
  }
  return peds;
}

// Uniform spawn/goal pairs; pedestrians shuttle between the two.
std::vector<PedestrianState> spawn_random(const ScenarioConfig& config, Placer& placer) {
  auto& rng = placer.rng();
  const Vec2 hall = config.hall_size;
  std::vector<PedestrianState> peds;
  while (static_cast<int>(peds.size()) < config.ped_count) {
    placer.attempt();
    const Vec2 p{rng.uniform(1.0, hall.x - 1.0), rng.uniform(1.0, hall.y - 1.0)};
    const Vec2 g{rng.uniform(1.0, hall.x - 1.0), rng.uniform(1.0, hall.y - 1.0)};
    if (!placer.clear_of_walls(p, 1.0) || !placer.clear_of_walls(g, 1.0)) continue;
    if (!placer.clear_of_start(p) || !placer.clear_of_start(g)) continue;
    if (!placer.clear_of_peds(p, peds) || (g - p).norm() < 3.0) continue;
    auto ped = make_pedestrian(config, rng, static_cast<int>(peds.size()), p, g);
    ped.route = {p};
    ped.cycle_route = true;
    peds.push_back(std::move(ped));
  }
  return peds;
}

}  // namespace

std::string_view to_string(Layout l) { return l == Layout::HallA ? "hall_a" : "hall_b"; }

std::string_view to_string(PedConfig p) {
  switch (p) {
    case PedConfig::Approach:
      return "approach";
    case PedConfig::Crossing:
      return "crossing";
    case PedConfig::Random:
      return "random";
  }
  return "?";
}

std::optional<Layout> parse_layout(std::string_view s) {
  if (s == "a" || s == "hall_a") return Layout::HallA;
  if (s == "b" || s == "hall_b") return Layout::HallB;
  return std::nullopt;
}

std::optional<PedConfig> parse_ped_config(std::string_view s) {
  if (s == "approach") return PedConfig::Approach;
  if (s == "crossing") return PedConfig::Crossing;
  if (s == "random") return PedConfig::Random;
  return std::nullopt;
}

std::vector<Segment2> layout_walls(Layout layout, Vec2 hall_size) {
  std::vector<Segment2> walls;
  add_rect(walls, {0.0, 0.0, hall_size.x, hall_size.y});
  const double sx = hall_size.x / kReferenceWidth;
  const double sy = hall_size.y / kReferenceDepth;
  const auto& tables = layout == Layout::HallA ? kHallATables : kHallBTables;
  for (const Rect& t : tables) add_rect(walls, {t.x0 * sx, t.y0 * sy, t.x1 * sx, t.y1 * sy});
  return walls;
}

ScenarioConfig default_scenario(PedConfig ped_config, Layout layout, std::uint64_t seed) {
  ScenarioConfig c;
  c.layout = layout;
  c.walls = layout_walls(layout, c.hall_size);
  c.ped_config = ped_config;
  c.ped_count = ped_config == PedConfig::Random ? 8 : 6;
  c.seed = seed;
  return c;
}

void validate(const ScenarioConfig& c) {
  if (!(c.dt > 0.0 && c.dt <= 0.1)) throw ConfigError("dt must lie in (0, 0.1]");
  if (!(c.max_duration > 0.0)) throw ConfigError("max_duration must be positive");
  if (c.ped_count < 0) throw ConfigError("ped_count must be non-negative");
  if (!(c.robot_radius > 0.0)) throw ConfigError("robot radius must be positive");
  if (!(c.ped_body_radius > 0.0)) throw ConfigError("pedestrian body radius must be positive");
  if (!(c.deadzone >= 0.0 && c.deadzone < 1.0)) throw ConfigError("deadzone must lie in [0, 1)");
  if (!(c.limits.v_max > 0.0 && c.limits.w_max > 0.0)) {
    throw ConfigError("speed limits must be positive");
  }
  const SfmParams& s = c.sfm;
  if (!(s.relaxation_time > 0.0 && s.social_strength > 0.0 && s.social_range > 0.0 &&
        s.obstacle_strength > 0.0 && s.obstacle_range > 0.0)) {
    throw ConfigError("social force parameters must be positive");
  }
  if (!(c.rvo.alpha >= 0.0 && c.rvo.alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (!(c.rvo.lookahead > 0.0)) throw ConfigError("lookahead must be positive");
  if (!(c.rvo.static_filter.horizon > 0.0 && c.rvo.static_filter.dt > 0.0)) {
    throw ConfigError("static filter horizon and dt must be positive");
  }
  if (!(c.guidance.threshold >= 0.0 && c.guidance.haptic_gain >= 0.0)) {
    throw ConfigError("guidance threshold and haptic gain must be non-negative");
  }
  c.rvo.weights.validate();

  const auto inside = [&](Vec2 p) {
    return p.x > 0.0 && p.y > 0.0 && p.x < c.hall_size.x && p.y < c.hall_size.y;
  };
  if (!inside(c.goal)) throw ConfigError("goal lies outside the hall");
  if (!inside(c.robot_start.position)) throw ConfigError("robot start lies outside the hall");
  if (wall_clearance(c.robot_start.position, c.walls) <= c.robot_radius) {
    throw ConfigError("robot start overlaps a wall");
  }
  if ((c.goal - c.robot_start.position).norm() <= c.goal_threshold) {
    throw ConfigError("robot starts inside the goal threshold");
  }
}

World build_scenario(const ScenarioConfig& config) {
  validate(config);
  World world;
  world.walls = config.walls;
  world.goal = config.goal;
  world.robot.pose = config.robot_start;
  world.robot.radius = config.robot_radius;

  Placer placer(config, world.walls);
  switch (config.ped_config) {
    case PedConfig::Approach:
      world.peds = spawn_approach(config, placer);
      break;
    case PedConfig::Crossing:
      world.peds = spawn_crossing(config, placer);
      break;
    case PedConfig::Random:
      world.peds = spawn_random(config, placer);
      break;
  }
  return world;
}

}  // namespace socnav
