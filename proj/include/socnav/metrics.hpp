#pragma once

#include <optional>
#include <span>
#include <vector>

#include "socnav/assistance.hpp"
#include "socnav/geometry.hpp"
#include "socnav/pedestrians.hpp"
#include "socnav/robot_model.hpp"

namespace socnav {

/// One simulation tick: the state at time t and the command applied from t on.
struct TickRecord {
  double t = 0.0;
  RobotState robot;
  std::vector<PedestrianState> peds;
  StickInput stick;
  Twist v_cmd;
  Vec2 v_pref_planar;
  std::optional<Twist> v_opt_twist;
  std::optional<Vec2> v_opt_planar;  // absent in MC
  Vec2 haptic_force;
  SteeringBars steering_bars;
  bool show_guidance = false;
  Condition condition = Condition::MC;
  bool infeasible = false;

  friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

struct TrialMetrics {
  int intimate_intrusions = 0;
  int personal_intrusions = 0;
  double path_length = 0.0;  // m
  double trial_time = 0.0;   // s
  std::optional<double> mean_disagreement;  // m/s, absent in MC

  friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

enum class ClearanceMode { Surface, Center };

struct IntrusionRadii {
  double intimate = 0.45;  // m
  double personal = 1.2;   // m

  friend bool operator==(const IntrusionRadii&, const IntrusionRadii&) = default;
};

struct IntrusionCounts {
  int intimate = 0;
  int personal = 0;

  friend bool operator==(const IntrusionCounts&, const IntrusionCounts&) = default;
};

struct MetricsParams {
  IntrusionRadii radii;
  ClearanceMode clearance = ClearanceMode::Surface;

  friend bool operator==(const MetricsParams&, const MetricsParams&) = default;
};

double clearance(const RobotState& robot, const PedestrianState& ped, ClearanceMode mode);

// Counts intrusion events: maximal runs of consecutive ticks during which one
// pedestrian's clearance stays below a zone radius. Zones are counted
// independently, so an intimate event also yields a personal one.
IntrusionCounts count_intrusions(std::span<const TickRecord> log, const IntrusionRadii& radii = {},
                                 ClearanceMode mode = ClearanceMode::Surface);

double path_length(std::span<const TickRecord> log);
double trial_time(std::span<const TickRecord> log);

// Mean of |v_pref - v_opt| over ticks that carry an optimal velocity. Absent for
// MC logs.
std::optional<double> mean_disagreement(std::span<const TickRecord> log);

// All of the above. Throws ConfigError on an empty log.
TrialMetrics compute_metrics(std::span<const TickRecord> log, const MetricsParams& params = {});

}  // namespace socnav
