// kdfbench: synthetic thin-stick experiments for distance and direction
// keypoint voting.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kdfnet/error.h"
#include "kdfnet/experiment.h"
#include "kdfnet/random.h"
#include "kdfnet/scene_io.h"
#include "kdfnet/synth.h"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<int> scenes;
  std::optional<int> threads;
};

void AddCommon(CLI::App* command, CommonOptions& options) {
  command->add_option("--config", options.config_path,
                      "JSON config file (flat keys)");
  command->add_option("--seed", options.seed, "Master seed");
  command->add_option("--out", options.out_dir, "Output directory");
  command->add_option("--scenes", options.scenes, "Override num_scenes");
  command->add_option("--threads", options.threads,
                      "Worker threads (0 = hardware concurrency)");
}

kdfnet::ExperimentConfig ResolveConfig(const CommonOptions& options) {
  kdfnet::ExperimentConfig config =
      options.config_path.empty() ? kdfnet::ExperimentConfig{}
                                  : kdfnet::LoadConfig(options.config_path);
  if (options.seed) {
    config.seed = *options.seed;
  }
  if (!options.out_dir.empty()) {
    config.output_dir = options.out_dir;
  }
  if (options.scenes) {
    config.num_scenes = *options.scenes;
  }
  if (options.threads) {
    config.threads = *options.threads;
  }
  config.Validate();
  return config;
}

std::vector<double> ParseValues(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw kdfnet::InvalidArgument("empty entry in --values");
    }
    item = item.substr(first, last - first + 1);
    double value = 0.0;
    const auto [end, error] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (error != std::errc() || end != item.data() + item.size()) {
      throw kdfnet::InvalidArgument("cannot parse '" + item + "' in --values");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw kdfnet::InvalidArgument("--values must list at least one number");
  }
  return values;
}

void PrintAggregates(const kdfnet::MetricList& metrics) {
  for (const auto& [name, value] : metrics) {
    std::cout << name << ' ' << kdfnet::FormatNumber(value) << '\n';
  }
}

int PrintError(std::string_view code, std::string_view message) {
  std::cerr << nlohmann::json{{"error", code}, {"message", message}}.dump()
            << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic keypoint voting experiments"};
  app.require_subcommand(1);

  CommonOptions run_options;
  auto* run = app.add_subcommand("run", "Run one experiment and write a report");
  AddCommon(run, run_options);

  CommonOptions sweep_options;
  std::string axis_name;
  std::string values_text;
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per axis value");
  AddCommon(sweep, sweep_options);
  sweep->add_option("--axis", axis_name,
                    "num_keypoints, theta, num_hypotheses, sigma_t or "
                    "occluder_radius");
  sweep->add_option("--values", values_text, "Comma-separated grid values");

  CommonOptions time_options;
  int repetitions = 20;
  auto* time = app.add_subcommand("time", "Time keypoint voting");
  AddCommon(time, time_options);
  time->add_option("--repetitions", repetitions, "Timed repetitions");

  CommonOptions gen_options;
  auto* gen = app.add_subcommand("gen", "Write a scene archive");
  AddCommon(gen, gen_options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    return PrintError("usage", error.what());
  }

  try {
    if (*run) {
      const auto config = ResolveConfig(run_options);
      const kdfnet::Report report = kdfnet::RunExperiment(config);
      kdfnet::WriteReport(config.output_dir, report);
      PrintAggregates(report.aggregates);
    } else if (*sweep) {
      const auto config = ResolveConfig(sweep_options);
      std::optional<kdfnet::SweepAxis> axis = config.sweep_axis;
      if (!axis_name.empty()) {
        axis = kdfnet::ParseSweepAxis(axis_name);
      }
      if (!axis) {
        throw kdfnet::InvalidArgument("sweep needs --axis or sweep_axis");
      }
      const std::vector<double> values =
          values_text.empty() ? config.sweep_values : ParseValues(values_text);
      const kdfnet::SweepResult result = kdfnet::Sweep(config, *axis, values);
      kdfnet::WriteSweep(config.output_dir, result);
      std::cout << kdfnet::SweepToCsv(result);
    } else if (*time) {
      const auto config = ResolveConfig(time_options);
      const kdfnet::TimingRecord record =
          kdfnet::TimeVoting(config, repetitions);
      std::cout << kdfnet::TimingToCsv(record);
    } else if (*gen) {
      const auto config = ResolveConfig(gen_options);
      for (int i = 0; i < config.num_scenes; ++i) {
        kdfnet::Rng rng = kdfnet::MakeRng(config.seed ^ static_cast<std::uint64_t>(i));
        kdfnet::WriteScene(config.output_dir,
                           kdfnet::MakeStickScene(config.scene, rng),
                           static_cast<std::uint64_t>(i));
      }
      std::cout << "wrote " << config.num_scenes << " scenes to "
                << config.output_dir.string() << '\n';
    }
  } catch (const kdfnet::Error& error) {
    return PrintError(error.code(), error.what());
  } catch (const std::exception& error) {
    return PrintError("internal", error.what());
  }
  return 0;
}
