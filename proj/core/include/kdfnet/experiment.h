#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kdfnet/kdf.h"
#include "kdfnet/metrics.h"
#include "kdfnet/synth.h"
#include "kdfnet/voting.h"

namespace kdfnet {

enum class SweepAxis {
  kNumKeypoints,
  kTheta,
  kNumHypotheses,
  kSigmaT,
  kOccluderRadius,
};

// Throws InvalidArgument for an unknown axis name.
SweepAxis ParseSweepAxis(std::string_view name);
std::string_view SweepAxisName(SweepAxis axis);

struct ExperimentConfig {
  int num_scenes = 3000;
  std::uint64_t seed = 0;
  SceneConfig scene;
  NoiseModel noise;
  bool occlusion = false;
  // rng_seed is replaced per scene.
  VotingConfig voting;
  // r defaults to DefaultLogScale of the image size when unset.
  std::optional<double> log_scale;
  LossConfig loss;
  EvalThresholds thresholds;
  bool direction_baseline = true;
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
  std::optional<SweepAxis> sweep_axis;
  std::vector<double> sweep_values;
  std::filesystem::path output_dir = "kdf_out";

  void Validate() const;
  double EffectiveLogScale() const;
  // Copy with one sweep grid value applied.
  ExperimentConfig WithAxisValue(SweepAxis axis, double value) const;
};

// Flat JSON document; every key is optional and unknown keys are rejected.
ExperimentConfig ConfigFromJson(const nlohmann::json& document);
nlohmann::json ConfigToJson(const ExperimentConfig& config);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

struct MethodRecord {
  // Empty on success, otherwise the error code that stopped the pipeline.
  std::string failure;
  // Per-keypoint localization error in pixels (infinity when not voted).
  std::vector<double> keypoint_errors;
  // Pose errors; infinity when the pose could not be recovered.
  double proj2d = 0.0;
  double add = 0.0;

  bool ok() const { return failure.empty(); }
};

struct SceneRecord {
  std::uint64_t index = 0;
  double projected_length = 0.0;
  std::uint64_t num_region_pixels = 0;
  double occluder_radius = 0.0;
  double kdf_loss = 0.0;
  MethodRecord distance;
  std::optional<MethodRecord> direction;
};

using MetricList = std::vector<std::pair<std::string, double>>;

struct Report {
  std::vector<SceneRecord> scenes;
  MetricList aggregates;
};

// Aggregate metrics recomputed from per-scene records, in report order.
MetricList AggregateMetrics(const std::vector<SceneRecord>& scenes,
                            const ExperimentConfig& config);

// Runs one scene end to end; exposed for tests.
SceneRecord RunScene(const ExperimentConfig& config, std::uint64_t index);

// Generates scenes, corrupts fields, votes with both schemes, recovers poses
// and scores them. Deterministic for a given config regardless of threads.
Report RunExperiment(const ExperimentConfig& config);

std::string AggregatesToCsv(const Report& report);
std::string ScenesToNdjson(const Report& report);
// Writes aggregates.csv and scenes.ndjson into `directory`.
void WriteReport(const std::filesystem::path& directory, const Report& report);

struct SweepResult {
  SweepAxis axis;
  std::vector<double> values;
  std::vector<Report> reports;
};

// One RunExperiment per value, all with the config's master seed. Throws
// InvalidArgument for an empty value list.
SweepResult Sweep(const ExperimentConfig& config, SweepAxis axis,
                  const std::vector<double>& values);

// Header "axis,value,metric,score", then one row per (value, metric).
std::string SweepToCsv(const SweepResult& result);
void WriteSweep(const std::filesystem::path& directory,
                const SweepResult& result);

struct TimingRecord {
  int num_voters = 0;
  int num_hypotheses = 0;
  int repetitions = 0;
  double median_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  // Hypothesis scoring alone.
  double median_scoring_ms = 0.0;
};

// Wall-clock statistics of VoteKeypoint on a noisy field with a square voter
// region of config.voting.num_voters pixels. Repetitions clamp to >= 1.
TimingRecord TimeVoting(const ExperimentConfig& config, int repetitions);
std::string TimingToCsv(const TimingRecord& record);

// Shortest decimal form that round-trips the double ("inf"/"nan" otherwise).
std::string FormatNumber(double value);

}  // namespace kdfnet
