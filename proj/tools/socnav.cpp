#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>

#include "CLI11.hpp"
#include "socnav/errors.hpp"
#include "socnav/gateway/batch.hpp"
#include "socnav/gateway/server.hpp"
#include "socnav/gateway/trial_log.hpp"

namespace {

using namespace socnav;
using namespace socnav::gateway;

constexpr int kExitUsage = 2;
constexpr int kExitReplayMismatch = 3;

struct RunArgs {
  std::string scenario;
  std::string layout = "a";
  std::string condition;
  std::string policy;
  std::uint64_t seed = 0;
  int repeat = 1;
  std::string out = ".";
  std::optional<int> ped_count;
  std::optional<double> dt;
  std::optional<double> max_duration;
  std::optional<double> alpha;
  std::vector<double> weights;
  std::optional<double> ped_personal_radius;
};

struct ServeArgs {
  std::optional<int> port;
  std::string address = "127.0.0.1";
  std::string out = "logs";
  std::string static_dir;
  double tick_rate = 20.0;
};

BatchOptions to_options(const RunArgs& a) {
  BatchOptions o;
  o.scenario = *parse_ped_config(a.scenario);
  o.layout = *parse_layout(a.layout);
  o.condition = *parse_condition(a.condition);
  const auto policy = parse_policy(a.policy);
  if (!policy) throw UsageError("unknown policy " + a.policy);
  o.policy = *policy;
  o.seed = a.seed;
  o.repeat = a.repeat;
  o.out_dir = a.out;
  o.overrides.ped_count = a.ped_count;
  o.overrides.dt = a.dt;
  o.overrides.max_duration = a.max_duration;
  o.overrides.alpha = a.alpha;
  o.overrides.ped_personal_radius = a.ped_personal_radius;
  if (!a.weights.empty()) o.overrides.weights = RvoWeights{a.weights[0], a.weights[1], a.weights[2]};
  return o;
}

int run(const RunArgs& args) {
  const BatchReport report = run_batch(to_options(args));
  for (const auto& t : report.trials) {
    std::cout << t.log_file.string() << "  " << to_string(t.reason) << '\n';
  }
  std::cout << report.summary_file.string() << '\n';
  return 0;
}

int serve(const ServeArgs& args) {
  boost::asio::io_context ioc;
  ServerOptions options;
  options.address = args.address;
  options.port = args.port ? static_cast<std::uint16_t>(*args.port) : port_from_env(8080);
  options.log_dir = args.out;
  options.static_dir = args.static_dir;
  options.tick_rate = args.tick_rate;
  Server server(ioc, options);
  server.start();
  boost::asio::signal_set signals(ioc, SIGINT, SIGTERM);
  signals.async_wait([&](const boost::system::error_code&, int) {
    server.stop();
    ioc.stop();
  });
  std::cout << "listening on " << options.address << ":" << server.port() << std::endl;
  ioc.run();
  return 0;
}

int recompute(const std::string& path) {
  const TrialLogFile file = load_trial_log(path);
  const TrialMetrics metrics = compute_metrics(file.ticks, file.header.config.metrics);
  Json out = to_json(metrics);
  out["matches_stored"] = metrics == file.metrics;
  std::cout << out.dump() << '\n';
  return metrics == file.metrics ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shared-autonomy navigation simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run a batch of scripted trials");
  run_cmd->add_option("--scenario", run_args.scenario, "Pedestrian configuration")
      ->required()
      ->check(CLI::IsMember({"approach", "crossing", "random"}));
  run_cmd->add_option("--layout", run_args.layout, "Hall layout")
      ->check(CLI::IsMember({"a", "b", "hall_a", "hall_b"}));
  run_cmd->add_option("--condition", run_args.condition, "Assistance condition")
      ->required()
      ->check(CLI::IsMember({"mc", "h", "vt", "vb", "hvt", "hvb"}));
  run_cmd->add_option("--policy", run_args.policy, "goal_seek | compliant | noisy | replay:<file>")
      ->required();
  run_cmd->add_option("--seed", run_args.seed, "First seed");
  run_cmd->add_option("--repeat", run_args.repeat, "Number of trials (seeds seed..seed+K-1)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run_args.out, "Output directory");
  run_cmd->add_option("--ped-count", run_args.ped_count, "Number of pedestrians");
  run_cmd->add_option("--dt", run_args.dt, "Tick length in seconds");
  run_cmd->add_option("--max-duration", run_args.max_duration, "Trial time limit in seconds");
  run_cmd->add_option("--alpha", run_args.alpha, "Reciprocity share in [0, 1]");
  run_cmd->add_option("--weights", run_args.weights, "Objective weights w1 w2 w3")
      ->expected(3);
  run_cmd->add_option("--ped-personal-radius", run_args.ped_personal_radius,
                      "Pedestrian radius used by the collision cones");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Serve live operator sessions");
  serve_cmd->add_option("--port", serve_args.port, "TCP port (default: SOCNAV_PORT or 8080)")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--address", serve_args.address, "Bind address");
  serve_cmd->add_option("--out", serve_args.out, "Directory for trial logs");
  serve_cmd->add_option("--static", serve_args.static_dir, "Directory served over HTTP");
  serve_cmd->add_option("--tick-rate", serve_args.tick_rate, "Ticks per wall-clock second");

  std::string log_path;
  auto* metrics_cmd = app.add_subcommand("metrics", "Recompute metrics from a trial log");
  metrics_cmd->add_option("log", log_path, "Trial log file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return run(run_args);
    if (*serve_cmd) return serve(serve_args);
    return recompute(log_path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ReplayMismatch& e) {
    std::cerr << "replay mismatch: " << e.what() << '\n';
    return kExitReplayMismatch;
  } catch (const FormatError& e) {
    std::cerr << "bad file: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
