#include "socnav/metrics.hpp"

#include <map>

#include "socnav/errors.hpp"

namespace socnav {

double clearance(const RobotState& robot, const PedestrianState& ped, ClearanceMode mode) {
  const double d = (ped.position - robot.pose.position).norm();
  if (mode == ClearanceMode::Center) return d;
  return d - robot.radius - ped.body_radius;
}

IntrusionCounts count_intrusions(std::span<const TickRecord> log, const IntrusionRadii& radii,
                                 ClearanceMode mode) {
  struct ZoneState {
    bool intimate = false;
    bool personal = false;
    std::size_t last_tick = 0;
  };
  std::map<int, ZoneState> zones;
  IntrusionCounts counts;

  for (std::size_t k = 0; k < log.size(); ++k) {
    for (const auto& ped : log[k].peds) {
      ZoneState& z = zones[ped.id];
      // A pedestrian missing from the previous tick breaks any running event.
      if (k > 0 && z.last_tick != k - 1) z.intimate = z.personal = false;
      z.last_tick = k;

      const double c = clearance(log[k].robot, ped, mode);
      const bool intimate = c < radii.intimate;
      const bool personal = c < radii.personal;
      if (intimate && !z.intimate) ++counts.intimate;
      if (personal && !z.personal) ++counts.personal;
      z.intimate = intimate;
      z.personal = personal;
    }
  }
  return counts;
}

double path_length(std::span<const TickRecord> log) {
  double total = 0.0;
  for (std::size_t k = 1; k < log.size(); ++k) {
    total += (log[k].robot.pose.position - log[k - 1].robot.pose.position).norm();
  }
  return total;
}

double trial_time(std::span<const TickRecord> log) {
  if (log.empty()) return 0.0;
  return log.back().t - log.front().t;
}

std::optional<double> mean_disagreement(std::span<const TickRecord> log) {
  if (log.empty() || !has_assistance(log.front().condition)) return std::nullopt;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& rec : log) {
    if (!rec.v_opt_planar) continue;
    sum += (rec.v_pref_planar - *rec.v_opt_planar).norm();
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

TrialMetrics compute_metrics(std::span<const TickRecord> log, const MetricsParams& params) {
  if (log.empty()) throw ConfigError("metrics need a non-empty log");
  const IntrusionCounts c = count_intrusions(log, params.radii, params.clearance);
  return {c.intimate, c.personal, path_length(log), trial_time(log), mean_disagreement(log)};
}

}  // namespace socnav
