// Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero when a
// gating criterion fails. Usage: acceptance <path-to-socnav-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "socnav/gateway/trial_log.hpp"
#include "socnav/trial.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"
#include "support/traces.hpp"
#include "support/worlds.hpp"

using namespace socnav;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

Outcome cone_oracle() {
  const auto t0 = Clock::now();
  testing::Gen g(9001);
  int checked = 0, banded = 0, disagreements = 0;
  for (int i = 0; i < 10000; ++i) {
    RobotState robot = g.robot(3.0);
    robot.twist = g.twist({1.0, 1.5}, false);
    PedestrianState ped = g.pedestrian(0, 4.0);
    const Vec2 v = g.vec(1.5);
    const std::vector<PedestrianState> peds{ped};
    const auto cones = build_cones(robot, peds, g.real(0.0, 1.0), 100.0, 0.5);
    const VelocityCone& c = cones.front();
    const Vec2 d = v - c.apex;
    const double miss = oracle::ray_point_distance(c.anchor, d, c.center);
    if (std::abs(miss - c.combined_radius) <= 1e-6) {
      ++banded;
      continue;
    }
    ++checked;
    if (in_any_cone(v, cones) != oracle::march_hits(c.anchor, d, c.center, c.combined_radius)) {
      ++disagreements;
    }
  }
  const double dt = seconds_since(t0);
  return {disagreements == 0 && dt < 5.0,
          "10000 triples, " + std::to_string(checked) + " checked, " + std::to_string(banded) +
              " in the 1e-6 band, " + std::to_string(disagreements) + " disagreements, " +
              fmt(dt) + " s (limit 5 s)"};
}

Outcome eq2_argmin() {
  const auto t0 = Clock::now();
  testing::Gen g(9002);
  int mismatches = 0, infeasible = 0, ties = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto w = testing::random_rvo_world(g);
    const auto out = optimal_velocity(w.samples, w.robot, w.cones, w.ctx, w.weights, w.lookahead);
    const auto want =
        oracle::exhaustive_argmin(w.samples, w.robot, w.cones, w.ctx, w.weights, w.lookahead);
    if (!want.found) {
      ++infeasible;
      if (!out.infeasible) ++mismatches;
      continue;
    }
    if (out.infeasible || out.sample_index != want.index || out.twist != w.samples[want.index] ||
        out.objective != want.value) {
      ++mismatches;
    }
    // Count worlds where a later sample ties with the winner.
    for (std::size_t k = want.index + 1; k < w.samples.size(); ++k) {
      const Vec2 v = twist_to_planar_velocity(w.robot, w.samples[k], w.lookahead);
      if (!in_any_cone(v, w.cones) &&
          oracle::objective(v, w.ctx.v_pref, w.ctx.v_prev_opt, w.ctx.v_goal, w.weights) ==
              want.value) {
        ++ties;
        break;
      }
    }
  }
  const double dt = seconds_since(t0);
  return {mismatches == 0 && dt < 10.0,
          "1000 worlds, " + std::to_string(mismatches) + " mismatches, " + std::to_string(ties) +
              " with exact ties, " + std::to_string(infeasible) + " fully blocked, " + fmt(dt) +
              " s (limit 10 s)"};
}

Outcome eq1_reduction() {
  testing::Gen g(9003);
  int mismatches = 0, compared = 0;
  const RvoWeights goal_only{0, 0, 1};
  for (int i = 0; i < 1000; ++i) {
    const auto w = testing::random_rvo_world(g);
    const auto out = optimal_velocity(w.samples, w.robot, w.cones, w.ctx, goal_only, w.lookahead);
    const auto want =
        oracle::nearest_to_goal(w.samples, w.robot, w.cones, w.ctx.v_goal, w.lookahead);
    if (!want.found) {
      if (!out.infeasible) ++mismatches;
      continue;
    }
    ++compared;
    if (out.sample_index != want.index || out.objective != want.value) ++mismatches;
  }
  return {mismatches == 0, "1000 cases (" + std::to_string(compared) + " feasible), " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome haptics() {
  testing::Gen g(9004);
  int iff_fail = 0, linear_fail = 0, zeros = 0;
  const SpeedLimits lim{1.0, 1.5};
  for (int i = 0; i < 1000; ++i) {
    const Twist pref = g.twist(lim);
    const Twist opt = g.coin(0.25) ? pref : g.twist(lim);
    const double k = g.real(0.1, 3.0);
    const bool equal = std::abs(opt.linear - pref.linear) <= 1e-12 &&
                       std::abs(opt.angular - pref.angular) <= 1e-12;
    const bool zero = haptic_force(opt, pref, k) == Vec2{0, 0};
    zeros += zero;
    if (zero != equal) ++iff_fail;

    const Twist delta{opt.linear - pref.linear, opt.angular - pref.angular};
    const Vec2 f1 = raw_haptic_force({pref.linear + delta.linear, pref.angular + delta.angular},
                                     pref, k);
    const Vec2 f2 = raw_haptic_force(
        {pref.linear + 2.0 * delta.linear, pref.angular + 2.0 * delta.angular}, pref, k);
    const double err = (f2 - f1 * 2.0).norm();
    if (err > 1e-12 * std::max(1.0, f2.norm())) ++linear_fail;
  }
  return {iff_fail == 0 && linear_fail == 0,
          "1000 pairs (" + std::to_string(zeros) + " equal), " + std::to_string(iff_fail) +
              " iff violations, " + std::to_string(linear_fail) + " linearity violations"};
}

Outcome closed_loop_safety() {
  const auto t0 = Clock::now();
  int clean = 0, failures_ok = 0, failures_bad = 0;
  std::string failed_seeds;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto cfg = default_scenario(PedConfig::Crossing, Layout::HallA, seed);
    cfg.ped_count = 6;
    cfg.rvo.weights = {1, 0, 0};
    cfg.ped_personal_radius = cfg.ped_body_radius + 0.45;
    CompliantPolicy policy;
    const auto r = run_trial(cfg, policy, Condition::HV_T);
    if (r.metrics.intimate_intrusions == 0) {
      ++clean;
      continue;
    }
    bool all_flagged = true;
    for (const auto& rec : r.log) {
      for (const auto& ped : rec.peds) {
        if (clearance(rec.robot, ped, ClearanceMode::Surface) < cfg.metrics.radii.intimate &&
            !rec.infeasible) {
          all_flagged = false;
        }
      }
    }
    (all_flagged ? failures_ok : failures_bad) += 1;
    failed_seeds += (failed_seeds.empty() ? "" : ",") + std::to_string(seed) +
                    (all_flagged ? "" : "(unflagged)");
  }
  const double dt = seconds_since(t0);
  return {clean >= 48 && failures_bad == 0 && dt < 120.0,
          std::to_string(clean) + "/50 trials with zero intimate events (need >= 48), failing seeds [" +
              failed_seeds + "], " + std::to_string(failures_bad) +
              " failures with unflagged intrusion ticks, " + fmt(dt, 1) + " s (limit 120 s)"};
}

Outcome intent_preservation() {
  std::size_t ticks = 0, mismatches = 0;
  for (auto layout : {Layout::HallA, Layout::HallB}) {
    for (Condition c : {Condition::H, Condition::V_T, Condition::V_B, Condition::HV_T,
                        Condition::HV_B}) {
      auto cfg = default_scenario(PedConfig::Crossing, layout, 0);
      cfg.ped_count = 0;
      cfg.rvo.weights = {1, 0, 0};
      GoalSeekPolicy policy;
      const auto r = run_trial(cfg, policy, c);
      for (const auto& rec : r.log) {
        ++ticks;
        if (!rec.v_opt_twist || *rec.v_opt_twist != cfg.limits.clamp(rec.v_cmd)) ++mismatches;
      }
    }
  }
  return {mismatches == 0 && ticks > 0,
          std::to_string(ticks - mismatches) + "/" + std::to_string(ticks) +
              " ticks with optimal twist == clamped operator twist (2 layouts x 5 conditions)"};
}

bool run_cli(const std::string& cli, const std::filesystem::path& out) {
  const std::string cmd = "\"" + cli +
                          "\" run --scenario crossing --layout a --condition hvt --policy noisy "
                          "--seed 42 --repeat 2 --out \"" +
                          out.string() + "\" > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

Outcome determinism(const std::string& cli) {
  // In process: two runs serialize to the same bytes.
  int in_process_diffs = 0;
  for (std::uint64_t seed : {3ULL, 42ULL}) {
    auto cfg = default_scenario(PedConfig::Random, Layout::HallB, seed);
    std::string text[2];
    for (auto& t : text) {
      NoisyGoalSeekPolicy policy(seed);
      t = gateway::serialize_trial_log(
          gateway::make_log_file(cfg, Condition::HV_B, "noisy", run_trial(cfg, policy, Condition::HV_B)));
    }
    if (text[0] != text[1]) ++in_process_diffs;
  }

  // Two separate process invocations of the CLI.
  if (cli.empty()) return {false, "no CLI path given"};
  testing::TempDir a("accept-a"), b("accept-b");
  if (!run_cli(cli, a.path()) || !run_cli(cli, b.path())) return {false, "CLI invocation failed"};
  int files = 0, cross_diffs = 0;
  for (const auto& entry : std::filesystem::directory_iterator(a.path())) {
    ++files;
    const auto other = b.path() / entry.path().filename();
    if (!std::filesystem::exists(other) ||
        testing::read_file(entry.path()) != testing::read_file(other)) {
      ++cross_diffs;
    }
  }
  return {in_process_diffs == 0 && cross_diffs == 0 && files == 3,
          "in-process: " + std::to_string(in_process_diffs) + " differing logs of 2; CLI: " +
              std::to_string(files) + " files per run, " + std::to_string(cross_diffs) +
              " differ byte-wise"};
}

Outcome metrics_oracles() {
  testing::Gen g(9005);
  int count_mismatch = 0;
  const std::vector<double> ref_trace{1.3, 1.0, 0.4, 1.0, 1.3};
  const IntrusionCounts ref = count_intrusions(testing::log_from_traces({ref_trace}));
  const bool ref_ok = ref == IntrusionCounts{1, 1};
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> trace =
        i == 0 ? ref_trace : testing::random_trace(g, static_cast<std::size_t>(g.integer(1, 400)));
    const IntrusionCounts got = count_intrusions(testing::log_from_traces({trace}));
    const IntrusionCounts want{oracle::run_length_events(trace, 0.45),
                               oracle::run_length_events(trace, 1.2)};
    if (got != want) ++count_mismatch;
  }

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(g.integer(1, 500));
    std::vector<TickRecord> log(n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      log[k].t = static_cast<double>(k) * 0.05;
      log[k].condition = Condition::HV_T;
      log[k].v_pref_planar = g.vec(1.0);
      log[k].v_opt_planar = g.vec(1.0);
      const Vec2 d = log[k].v_pref_planar - *log[k].v_opt_planar;
      sum += std::sqrt(d.x * d.x + d.y * d.y);
    }
    worst = std::max(worst, std::abs(*mean_disagreement(log) - sum / static_cast<double>(n)));
  }
  return {ref_ok && count_mismatch == 0 && worst <= 1e-12,
          "100 traces, " + std::to_string(count_mismatch) + " count mismatches, reference trace -> (" +
              std::to_string(ref.intimate) + "," + std::to_string(ref.personal) +
              "); mean_disagreement max error " + fmt(worst * 1e15, 1) + "e-15 (limit 1e-12)"};
}

Outcome kinematics() {
  testing::Gen g(9006);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Twist c{g.real(-1.0, 1.0), g.real(-1.5, 1.5)};
    const double horizon = g.real(0.1, 3.0);
    RobotState s;
    s.pose = Pose2(0, 0, 0);
    const Pose2 closed = step(s, c, horizon).pose;
    const Pose2 euler =
        oracle::euler_unicycle(s.pose, c, horizon, std::lround(horizon / 1e-5));
    worst = std::max(worst, (closed.position - euler.position).norm());
  }
  RobotState s;
  s.pose = Pose2(0, 0, 0);
  const Pose2 q = step(s, {1, 1}, kPi / 2).pose;
  const double q_err = std::max({std::abs(q.position.x - 1.0), std::abs(q.position.y - 1.0),
                                 std::abs(q.heading - kPi / 2)});
  return {worst < 1e-3 && q_err < 1e-12,
          "100 triples, max endpoint error " + fmt(worst * 1e6, 2) +
              "e-6 m (limit 1e-3); quarter circle error " + fmt(q_err * 1e15, 2) + "e-15"};
}

Outcome plausibility() {
  std::vector<double> times;
  int goals = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto cfg = default_scenario(PedConfig::Crossing, Layout::HallA, seed);
    GoalSeekPolicy policy;
    const auto r = run_trial(cfg, policy, Condition::MC);
    goals += r.complete();
    times.push_back(r.metrics.trial_time);
  }
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  double mean = 0.0;
  for (double t : times) mean += t;
  mean /= static_cast<double>(times.size());
  return {*lo >= 20.0 && *hi <= 120.0,
          "goal_seek crossing, 20 seeds: " + std::to_string(goals) + " reached the goal, trial time " +
              fmt(*lo, 2) + "-" + fmt(*hi, 2) + " s, mean " + fmt(mean, 2) +
              " s (bracket 20-120 s, human range 41.57-59.79 s)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    const char* name;
    bool gating;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"cone-membership oracle", true, cone_oracle},
      {"rvo argmin oracle", true, eq2_argmin},
      {"goal-only reduction", true, eq1_reduction},
      {"haptic force", true, haptics},
      {"closed-loop safety", true, closed_loop_safety},
      {"intent preservation", true, intent_preservation},
      {"determinism", true, [&cli] { return determinism(cli); }},
      {"metrics oracles", true, metrics_oracles},
      {"kinematics", true, kinematics},
      {"plausibility anchor (report only)", false, plausibility},
  };

  int gating_failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass && c.gating) ++gating_failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail << std::endl;
  }
  std::cout << (gating_failures == 0 ? "all gating criteria passed"
                                     : std::to_string(gating_failures) + " gating criteria failed")
            << std::endl;
  return gating_failures == 0 ? 0 : 1;
}
