#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "socnav/geometry.hpp"
#include "socnav/pedestrians.hpp"
#include "socnav/robot_model.hpp"
#include "socnav/sa_rvo.hpp"

namespace socnav {

/// The six control conditions: manual, haptic, visual trajectory, visual bars,
/// and the two haptic + visual combinations.
enum class Condition { MC, H, V_T, V_B, HV_T, HV_B };

constexpr bool has_assistance(Condition c) { return c != Condition::MC; }
constexpr bool has_haptics(Condition c) {
  return c == Condition::H || c == Condition::HV_T || c == Condition::HV_B;
}
constexpr bool has_guidance_trajectory(Condition c) {
  return c == Condition::V_T || c == Condition::HV_T;
}
constexpr bool has_steering_bars(Condition c) {
  return c == Condition::V_B || c == Condition::HV_B;
}

/// Short names used on the command line and in files: mc, h, vt, vb, hvt, hvb.
std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view s);

struct SteeringBars {
  double left = 0.0;
  double right = 0.0;

  friend bool operator==(const SteeringBars&, const SteeringBars&) = default;
};

struct AssistanceOutput {
  std::optional<Twist> v_opt_twist;  // absent in MC
  std::optional<Vec2> v_opt_planar;
  Vec2 haptic_force;                 // (linear, angular) stick axes, each in [-1, 1]
  std::vector<Pose2> guidance_trajectory;
  std::vector<Pose2> predicted_trajectory;
  SteeringBars steering_bars;
  double speed_fraction = 0.0;
  bool infeasible = false;
  bool show_guidance = false;

  friend bool operator==(const AssistanceOutput&, const AssistanceOutput&) = default;
};

struct GuidanceParams {
  double threshold = 0.15;       // m/s
  double hysteresis = 0.05;      // m/s, half-width of the band around threshold
  double bar_gain = 1.0;
  double haptic_gain = 1.2;      // K_p
  double horizon = 2.0;          // s, trajectory overlays
  double dt = 0.1;               // s

  friend bool operator==(const GuidanceParams&, const GuidanceParams&) = default;
};

// K_p * (v_opt - v_pref) in twist coordinates, before device clamping.
Vec2 raw_haptic_force(Twist v_opt, Twist v_pref, double gain);
// raw_haptic_force clamped per axis to [-1, 1].
Vec2 haptic_force(Twist v_opt, Twist v_pref, double gain);

// Display gate with hysteresis. Opens above threshold + hysteresis, closes at or
// below threshold - hysteresis; with zero hysteresis this is `gap > threshold`.
bool update_guidance_gate(bool shown, double gap, const GuidanceParams& params);

// Fills the display fields of an output for one tick. `gate_shown` is the
// previous display state and receives the new one.
void guidance_visuals(AssistanceOutput& out, const RobotState& robot, Twist v_opt, Twist v_pref,
                      Condition condition, const SpeedLimits& limits,
                      const GuidanceParams& params, double lookahead, bool& gate_shown);

/// Everything the assistance engine needs about the world for one tick.
struct AssistanceInputs {
  const RobotState& robot;
  std::span<const PedestrianState> peds;
  std::span<const Segment2> walls;
  Vec2 goal;
  Twist v_pref;
  Vec2 v_prev_opt;
};

// SA-RVO selection followed by the haptic and visual renderings gated by
// condition. MC yields only the predicted trace and speed readout.
AssistanceOutput compute_assistance(const AssistanceInputs& in, Condition condition,
                                    const RvoParams& rvo, const SpeedLimits& limits,
                                    const GuidanceParams& guidance, bool& gate_shown);

// Re-renders an existing output's operator-dependent fields for a different
// operator command (haptics, gate, trajectories, bars) without re-solving.
void rerender_for_command(AssistanceOutput& out, const RobotState& robot, Twist v_pref,
                          Condition condition, const SpeedLimits& limits,
                          const GuidanceParams& guidance, double lookahead, bool& gate_shown);

}  // namespace socnav
