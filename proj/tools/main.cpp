#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cliquefilter/config.hpp"
#include "cliquefilter/errors.hpp"
#include "cliquefilter/experiment.hpp"
#include "cliquefilter/scene.hpp"
#include "cliquefilter/sensor.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cliquefilter;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
};

ExperimentConfig load_effective_config(const CommonOptions& options) {
  ExperimentConfig config = load_config(options.config_path);
  if (options.seed) config.base_seed = *options.seed;
  if (options.out_dir) config.out_dir = *options.out_dir;
  if (options.jobs) {
    if (*options.jobs < 0) throw ConfigError("--jobs must be >= 0");
    config.jobs = *options.jobs;
  }
  return config;
}

fs::path prepare_out_dir(const ExperimentConfig& config) {
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

int cmd_simulate(const CommonOptions& options) {
  const ExperimentConfig config = load_effective_config(options);
  const fs::path out_dir = prepare_out_dir(config);
  const std::uint64_t seed = config.base_seed;

  const SimRun run =
      simulate(seed, config.world_spec(), config.trajectory_spec(), config.sensor_spec());

  const fs::path scene_path = out_dir / ("scene_" + std::to_string(seed) + ".txt");
  {
    std::ofstream out(scene_path);
    if (!out) throw std::runtime_error("cannot open " + scene_path.string() + " for writing");
    write_scene(out, run.scene);
  }
  const fs::path log_path = out_dir / ("detections_" + std::to_string(seed) + ".txt");
  {
    std::ofstream out(log_path);
    if (!out) throw std::runtime_error("cannot open " + log_path.string() + " for writing");
    write_detection_log(out, run.stream);
  }

  std::map<std::int64_t, std::int64_t> steps_per_clique;
  for (const auto& step : run.stream) ++steps_per_clique[step.clique_id];

  std::cout << "scene: " << scene_path.string() << " (" << run.scene.objects.size()
            << " objects, " << run.scene.total_features() << " features)\n";
  std::cout << "detections: " << log_path.string() << " (" << run.stream.size()
            << " clique steps)\n";
  for (const auto& object : run.scene.objects) {
    const auto it = steps_per_clique.find(object.object_id);
    const std::int64_t steps = it == steps_per_clique.end() ? 0 : it->second;
    std::cout << "clique " << object.object_id << ": " << object.features.size() << " features, "
              << steps << " expected-observation steps, survival "
              << format_double(object.survival_time) << "\n";
  }
  return kExitOk;
}

int cmd_run(const CommonOptions& options) {
  const ExperimentConfig config = load_effective_config(options);
  const fs::path out_dir = prepare_out_dir(config);

  const RunSink sink = [&](const RunArtifacts& artifacts) {
    const fs::path path = out_dir / ("timeline_" + std::to_string(artifacts.seed) + ".txt");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_timeline(out, artifacts.timeline);
  };
  const BatchResult result = run_batch(config, sink);

  const std::string report = render_report(result);
  write_file(out_dir / "report.txt", report);
  write_file(out_dir / "summary.json", render_summary_json(result));
  std::cout << report;
  std::cout << "report: " << (out_dir / "report.txt").string() << "\n";
  std::cout << "summary: " << (out_dir / "summary.json").string() << "\n";
  std::cout << "timelines: " << (out_dir / "timeline_<seed>.txt").string() << " for "
            << result.runs << " run(s)\n";
  return kExitOk;
}

int cmd_replay(const CommonOptions& options, const std::string& log_path) {
  const ExperimentConfig config = load_effective_config(options);
  const fs::path out_dir = prepare_out_dir(config);

  std::ifstream in(log_path);
  if (!in) throw std::runtime_error("cannot open detection log '" + log_path + "'");
  const DetectionStream stream = read_detection_log(in);

  const auto timeline = replay_stream(config, stream);
  const fs::path path = out_dir / "timeline_replay.txt";
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_timeline(out, timeline);
  }
  std::cout << "replayed " << stream.size() << " clique steps from " << log_path << "\n";
  std::cout << "timeline: " << path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint clique landmark persistence filtering toolkit"};
  app.require_subcommand(1);

  CommonOptions options;
  std::string replay_log;

  const auto add_common = [&](CLI::App* cmd, bool with_jobs) {
    cmd->add_option("--config", options.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", options.seed, "override the config's base seed");
    cmd->add_option("--out", options.out_dir, "override the config's output directory");
    if (with_jobs) cmd->add_option("--jobs", options.jobs, "worker threads (0 = all cores)");
  };

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "generate a world and write its scene + detection log");
  add_common(simulate_cmd, false);

  CLI::App* run_cmd =
      app.add_subcommand("run", "run the Monte Carlo benchmark and write report + timelines");
  add_common(run_cmd, true);

  CLI::App* replay_cmd =
      app.add_subcommand("replay", "re-filter a recorded detection log into a timeline");
  add_common(replay_cmd, false);
  replay_cmd->add_option("log", replay_log, "detection log file")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(options);
    if (run_cmd->parsed()) return cmd_run(options);
    if (replay_cmd->parsed()) return cmd_replay(options, replay_log);
    std::cerr << "no command given\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}
