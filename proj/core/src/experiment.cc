#include "kdfnet/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "kdfnet/direction_voting.h"
#include "kdfnet/error.h"
#include "kdfnet/pose.h"
#include "kdfnet/random.h"

namespace kdfnet {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Salt separating the voting streams from the scene-generation stream.
constexpr std::uint64_t kVotingSalt = 0x766f74696e67ULL;

struct AxisName {
  SweepAxis axis;
  std::string_view name;
};

constexpr AxisName kAxisNames[] = {
    {SweepAxis::kNumKeypoints, "num_keypoints"},
    {SweepAxis::kTheta, "theta"},
    {SweepAxis::kNumHypotheses, "num_hypotheses"},
    {SweepAxis::kSigmaT, "sigma_t"},
    {SweepAxis::kOccluderRadius, "occluder_radius"},
};

int ToCount(double value, const char* what) {
  if (!(value >= 1.0) || value != std::floor(value) || value > 1e9) {
    throw InvalidArgument(std::string(what) + " must be a positive integer");
  }
  return static_cast<int>(value);
}

// Pose recovery for one method from its voted keypoints.
void ScorePose(const std::vector<Eigen::Vector2d>& voted,
               const SceneSample& scene, const ObjectModel& model,
               const ExperimentConfig& config, MethodRecord& record) {
  std::vector<Correspondence> correspondences;
  for (size_t k = 0; k < voted.size(); ++k) {
    correspondences.push_back({model.keypoints[k], voted[k], 1.0});
  }
  try {
    const PnPResult result =
        SolveAxialPnP(correspondences, config.scene.intrinsics,
                      *model.symmetry.axis());
    record.proj2d =
        Proj2dDistance(result.pose, scene.pose, model, config.scene.intrinsics);
    record.add = AddOrAddsDistance(result.pose, scene.pose, model);
  } catch (const Error& error) {
    record.failure = error.code();
    record.proj2d = kInfinity;
    record.add = kInfinity;
  }
}

template <typename Vote>
MethodRecord RunMethod(const SceneSample& scene, const ObjectModel& model,
                       const ExperimentConfig& config, Vote&& vote) {
  MethodRecord record;
  std::vector<Eigen::Vector2d> voted;
  try {
    for (size_t k = 0; k < scene.keypoints2d.size(); ++k) {
      const Hypothesis hypothesis = vote(k);
      voted.push_back(hypothesis.location);
      record.keypoint_errors.push_back(
          (hypothesis.location - scene.keypoints2d[k]).norm());
    }
  } catch (const Error& error) {
    record.failure = error.code();
    record.keypoint_errors.resize(scene.keypoints2d.size(), kInfinity);
    record.proj2d = kInfinity;
    record.add = kInfinity;
    return record;
  }
  ScorePose(voted, scene, model, config, record);
  return record;
}

nlohmann::json NumberOrString(double value) {
  if (std::isfinite(value)) {
    return value;
  }
  return FormatNumber(value);
}

nlohmann::json MethodToJson(const MethodRecord& record) {
  nlohmann::json errors = nlohmann::json::array();
  for (const double error : record.keypoint_errors) {
    errors.push_back(NumberOrString(error));
  }
  return {{"failure", record.failure},
          {"keypoint_errors", errors},
          {"proj2d", NumberOrString(record.proj2d)},
          {"add", NumberOrString(record.add)}};
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  stream << text;
  if (!stream) {
    throw IoError("failed writing " + path.string());
  }
}

void EnsureDirectory(const std::filesystem::path& directory) {
  std::error_code error;
  std::filesystem::create_directories(directory, error);
  if (error) {
    throw IoError("cannot create " + directory.string() + ": " +
                  error.message());
  }
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t middle = values.size() / 2;
  if (values.size() % 2 == 1) {
    return values[middle];
  }
  return 0.5 * (values[middle - 1] + values[middle]);
}

}  // namespace

SweepAxis ParseSweepAxis(std::string_view name) {
  for (const auto& entry : kAxisNames) {
    if (entry.name == name) {
      return entry.axis;
    }
  }
  throw InvalidArgument("unknown sweep axis '" + std::string(name) + "'");
}

std::string_view SweepAxisName(SweepAxis axis) {
  for (const auto& entry : kAxisNames) {
    if (entry.axis == axis) {
      return entry.name;
    }
  }
  return "unknown";
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void ExperimentConfig::Validate() const {
  if (num_scenes < 1) {
    throw InvalidArgument("num_scenes must be at least 1");
  }
  scene.Validate();
  if (scene.stick.num_keypoints < 4) {
    throw InvalidArgument("experiments need at least 4 keypoints");
  }
  noise.Validate();
  voting.Validate();
  loss.Validate();
  thresholds.Validate();
  if (log_scale && !(*log_scale > 0.0)) {
    throw InvalidArgument("log_scale must be positive");
  }
  if (threads < 0) {
    throw InvalidArgument("threads must be non-negative");
  }
  if (sweep_axis && sweep_values.empty()) {
    throw InvalidArgument("sweep_values must be non-empty when sweep_axis is set");
  }
}

double ExperimentConfig::EffectiveLogScale() const {
  return log_scale.value_or(
      DefaultLogScale(scene.intrinsics.height, scene.intrinsics.width));
}

ExperimentConfig ExperimentConfig::WithAxisValue(SweepAxis axis,
                                                 double value) const {
  ExperimentConfig copy = *this;
  switch (axis) {
    case SweepAxis::kNumKeypoints:
      copy.scene.stick.num_keypoints = ToCount(value, "num_keypoints");
      break;
    case SweepAxis::kTheta:
      copy.voting.inlier_threshold = value;
      break;
    case SweepAxis::kNumHypotheses:
      copy.voting.num_triples = VotingConfig::TriplesForHypotheses(
          ToCount(value, "num_hypotheses"));
      break;
    case SweepAxis::kSigmaT:
      copy.noise.sigma_t = value;
      break;
    case SweepAxis::kOccluderRadius:
      copy.noise.occluder_radius = value;
      copy.occlusion = true;
      break;
  }
  copy.Validate();
  return copy;
}

ExperimentConfig ConfigFromJson(const nlohmann::json& document) {
  if (!document.is_object()) {
    throw InvalidArgument("config must be a JSON object");
  }
  ExperimentConfig config;
  try {
    for (const auto& [key, value] : document.items()) {
      if (key == "num_scenes") {
        config.num_scenes = value.get<int>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "image_height") {
        config.scene.intrinsics.height = value.get<int>();
      } else if (key == "image_width") {
        config.scene.intrinsics.width = value.get<int>();
      } else if (key == "fx") {
        config.scene.intrinsics.fx = value.get<double>();
      } else if (key == "fy") {
        config.scene.intrinsics.fy = value.get<double>();
      } else if (key == "cx") {
        config.scene.intrinsics.cx = value.get<double>();
      } else if (key == "cy") {
        config.scene.intrinsics.cy = value.get<double>();
      } else if (key == "translation") {
        const auto t = value.get<std::vector<double>>();
        if (t.size() != 3) {
          throw InvalidArgument("translation must have 3 entries");
        }
        config.scene.translation = Eigen::Vector3d(t[0], t[1], t[2]);
      } else if (key == "stick_length") {
        config.scene.stick.length = value.get<double>();
      } else if (key == "stick_radius") {
        config.scene.stick.radius = value.get<double>();
      } else if (key == "num_keypoints") {
        config.scene.stick.num_keypoints = value.get<int>();
      } else if (key == "model_points") {
        config.scene.stick.num_model_points = value.get<int>();
      } else if (key == "sigma_t") {
        config.noise.sigma_t = value.get<double>();
      } else if (key == "outlier_fraction") {
        config.noise.outlier_fraction = value.get<double>();
      } else if (key == "sigma_direction") {
        config.noise.sigma_direction = value.get<double>();
      } else if (key == "occlusion") {
        config.occlusion = value.get<bool>();
      } else if (key == "occluder_radius") {
        config.noise.occluder_radius =
            value.is_null() ? std::nullopt
                            : std::optional<double>(value.get<double>());
      } else if (key == "occluder_fraction") {
        config.noise.occluder_length_fraction = value.get<double>();
      } else if (key == "num_voters") {
        config.voting.num_voters = value.get<int>();
      } else if (key == "num_triples") {
        config.voting.num_triples = value.get<int>();
      } else if (key == "num_hypotheses") {
        config.voting.num_triples =
            VotingConfig::TriplesForHypotheses(value.get<int>());
      } else if (key == "theta") {
        config.voting.inlier_threshold = value.get<double>();
      } else if (key == "direction_cos_threshold") {
        config.voting.direction_cos_threshold = value.get<double>();
      } else if (key == "log_scale") {
        config.log_scale = value.is_null()
                               ? std::nullopt
                               : std::optional<double>(value.get<double>());
      } else if (key == "loss_e") {
        config.loss.e = value.get<double>();
      } else if (key == "crop_radius") {
        config.loss.crop_radius =
            value.is_null() ? std::nullopt
                            : std::optional<double>(value.get<double>());
      } else if (key == "add_fraction") {
        config.thresholds.add_fraction = value.get<double>();
      } else if (key == "proj_pixels") {
        config.thresholds.proj_pixels = value.get<double>();
      } else if (key == "toy_proj_pixels") {
        config.thresholds.toy_proj_pixels = value.get<double>();
      } else if (key == "auc_max") {
        config.thresholds.auc_max = value.get<double>();
      } else if (key == "direction_baseline") {
        config.direction_baseline = value.get<bool>();
      } else if (key == "threads") {
        config.threads = value.get<int>();
      } else if (key == "sweep_axis") {
        if (value.is_null()) {
          config.sweep_axis.reset();
        } else {
          config.sweep_axis = ParseSweepAxis(value.get<std::string>());
        }
      } else if (key == "sweep_values") {
        config.sweep_values = value.get<std::vector<double>>();
      } else if (key == "output") {
        config.output_dir = value.get<std::string>();
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& error) {
    throw InvalidArgument(std::string("malformed config value: ") +
                          error.what());
  }
  if (!config.log_scale) {
    config.loss.r = config.EffectiveLogScale();
  } else {
    config.loss.r = *config.log_scale;
  }
  config.Validate();
  return config;
}

nlohmann::json ConfigToJson(const ExperimentConfig& config) {
  const auto& intrinsics = config.scene.intrinsics;
  nlohmann::json document = {
      {"num_scenes", config.num_scenes},
      {"seed", config.seed},
      {"image_height", intrinsics.height},
      {"image_width", intrinsics.width},
      {"fx", intrinsics.fx},
      {"fy", intrinsics.fy},
      {"cx", intrinsics.cx},
      {"cy", intrinsics.cy},
      {"translation",
       {config.scene.translation.x(), config.scene.translation.y(),
        config.scene.translation.z()}},
      {"stick_length", config.scene.stick.length},
      {"stick_radius", config.scene.stick.radius},
      {"num_keypoints", config.scene.stick.num_keypoints},
      {"model_points", config.scene.stick.num_model_points},
      {"sigma_t", config.noise.sigma_t},
      {"outlier_fraction", config.noise.outlier_fraction},
      {"sigma_direction", config.noise.sigma_direction},
      {"occlusion", config.occlusion},
      {"occluder_fraction", config.noise.occluder_length_fraction},
      {"num_voters", config.voting.num_voters},
      {"num_triples", config.voting.num_triples},
      {"theta", config.voting.inlier_threshold},
      {"direction_cos_threshold", config.voting.direction_cos_threshold},
      {"loss_e", config.loss.e},
      {"add_fraction", config.thresholds.add_fraction},
      {"proj_pixels", config.thresholds.proj_pixels},
      {"toy_proj_pixels", config.thresholds.toy_proj_pixels},
      {"auc_max", config.thresholds.auc_max},
      {"direction_baseline", config.direction_baseline},
      {"threads", config.threads},
      {"sweep_values", config.sweep_values},
      {"output", config.output_dir.string()},
  };
  document["occluder_radius"] = config.noise.occluder_radius
                                    ? nlohmann::json(*config.noise.occluder_radius)
                                    : nlohmann::json(nullptr);
  document["log_scale"] = config.log_scale ? nlohmann::json(*config.log_scale)
                                           : nlohmann::json(nullptr);
  document["crop_radius"] = config.loss.crop_radius
                                ? nlohmann::json(*config.loss.crop_radius)
                                : nlohmann::json(nullptr);
  document["sweep_axis"] =
      config.sweep_axis ? nlohmann::json(std::string(SweepAxisName(*config.sweep_axis)))
                        : nlohmann::json(nullptr);
  return document;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open config " + path.string());
  }
  nlohmann::json document;
  try {
    stream >> document;
  } catch (const nlohmann::json::parse_error& error) {
    throw IoError(path.string() + ": " + error.what());
  }
  try {
    return ConfigFromJson(document);
  } catch (const InvalidArgument& error) {
    throw InvalidArgument(path.string() + ": " + error.what());
  }
}

SceneRecord RunScene(const ExperimentConfig& config, std::uint64_t index) {
  const std::uint64_t scene_seed = config.seed ^ index;
  Rng rng = MakeRng(scene_seed);
  const SceneSample scene = MakeStickScene(config.scene, rng);
  const ObjectModel model = MakeStickModel(config.scene.stick);
  const CameraIntrinsics& intrinsics = config.scene.intrinsics;
  const double log_scale = config.EffectiveLogScale();

  SceneRecord record;
  record.index = index;
  record.projected_length = scene.projected_length;

  // Noise is drawn only where fields are read: the object mask (voters) and
  // the loss support around each keypoint.
  std::vector<DistanceField> predicted;
  double loss_sum = 0.0;
  for (const auto& gt : scene.gt_fields) {
    std::optional<Mask> support;
    if (config.loss.crop_radius) {
      support = scene.mask;
      const auto values = gt.values();
      const auto bits = scene.mask.bits();
      for (int v = 0; v < gt.height(); ++v) {
        for (int u = 0; u < gt.width(); ++u) {
          const size_t i = static_cast<size_t>(v) * gt.width() + u;
          if (!bits[i] && values[i] <= *config.loss.crop_radius) {
            support->set(u, v, true);
          }
        }
      }
    }
    predicted.push_back(CorruptField(gt, config.noise, log_scale, rng,
                                     support ? &*support : nullptr));
    try {
      loss_sum += KdfLoss(predicted.back(), gt, config.loss);
    } catch (const InvalidArgument&) {
      loss_sum += std::numeric_limits<double>::quiet_NaN();
    }
  }
  record.kdf_loss = loss_sum / static_cast<double>(predicted.size());

  std::vector<DirectionField> directions;
  if (config.direction_baseline) {
    for (size_t k = 0; k < scene.keypoints2d.size(); ++k) {
      directions.push_back(CorruptDirectionField(
          BuildDirectionField(scene.keypoints2d[k], intrinsics.height,
                              intrinsics.width, static_cast<int>(k)),
          config.noise, rng, &scene.mask));
    }
  }

  Mask region = scene.mask;
  if (config.occlusion) {
    record.occluder_radius = config.noise.OccluderRadius(scene.projected_length);
    region = OccludeKeypoints(region, scene.keypoints2d, record.occluder_radius);
  }
  const auto pixels = region.Pixels();
  record.num_region_pixels = pixels.size();

  VotingConfig voting = config.voting;
  voting.rng_seed = MixSeed(scene_seed ^ kVotingSalt);

  record.distance = RunMethod(scene, model, config, [&](size_t k) {
    return VoteKeypoint(predicted[k], pixels, voting);
  });
  if (config.direction_baseline) {
    record.direction = RunMethod(scene, model, config, [&](size_t k) {
      return DirectionVoteKeypoint(directions[k], pixels, voting);
    });
  }
  return record;
}

MetricList AggregateMetrics(const std::vector<SceneRecord>& scenes,
                            const ExperimentConfig& config) {
  MetricList metrics;
  const auto& thresholds = config.thresholds;
  const ObjectModel model = MakeStickModel(config.scene.stick);
  const double add_threshold = thresholds.add_fraction * model.diameter;

  auto summarize = [&](const std::string& prefix, auto&& select) {
    std::vector<double> proj2d;
    std::vector<double> add;
    std::vector<double> keypoint_errors;
    double failures = 0.0;
    for (const auto& scene : scenes) {
      const MethodRecord& record = select(scene);
      proj2d.push_back(record.proj2d);
      add.push_back(record.add);
      keypoint_errors.insert(keypoint_errors.end(),
                             record.keypoint_errors.begin(),
                             record.keypoint_errors.end());
      failures += record.ok() ? 0.0 : 1.0;
    }
    metrics.emplace_back(prefix + "_proj2d_acc_toy",
                         Accuracy(proj2d, thresholds.toy_proj_pixels));
    metrics.emplace_back(prefix + "_proj2d_acc",
                         Accuracy(proj2d, thresholds.proj_pixels));
    metrics.emplace_back(prefix + "_add_acc", Accuracy(add, add_threshold));
    metrics.emplace_back(prefix + "_add_auc", Auc(add, thresholds.auc_max));
    metrics.emplace_back(prefix + "_keypoint_acc_toy",
                         Accuracy(keypoint_errors, thresholds.toy_proj_pixels));
    metrics.emplace_back(prefix + "_failure_rate",
                         failures / static_cast<double>(scenes.size()));
  };

  summarize("distance", [](const SceneRecord& s) -> const MethodRecord& {
    return s.distance;
  });
  if (config.direction_baseline) {
    summarize("direction", [](const SceneRecord& s) -> const MethodRecord& {
      return *s.direction;
    });
  }

  double loss_sum = 0.0;
  for (const auto& scene : scenes) {
    loss_sum += scene.kdf_loss;
  }
  metrics.emplace_back("mean_kdf_loss",
                       loss_sum / static_cast<double>(scenes.size()));
  return metrics;
}

Report RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const size_t count = static_cast<size_t>(config.num_scenes);
  Report report;
  report.scenes.resize(count);

  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (size_t i = next++; i < count; i = next++) {
      try {
        report.scenes[i] = RunScene(config, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = count;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (auto& thread : pool) {
      thread.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  report.aggregates = AggregateMetrics(report.scenes, config);
  return report;
}

std::string AggregatesToCsv(const Report& report) {
  std::string csv = "metric,value\n";
  for (const auto& [name, value] : report.aggregates) {
    csv += name + "," + FormatNumber(value) + "\n";
  }
  return csv;
}

std::string ScenesToNdjson(const Report& report) {
  std::string text;
  for (const auto& scene : report.scenes) {
    nlohmann::json line = {
        {"index", scene.index},
        {"projected_length", scene.projected_length},
        {"num_region_pixels", scene.num_region_pixels},
        {"occluder_radius", scene.occluder_radius},
        {"kdf_loss", NumberOrString(scene.kdf_loss)},
        {"distance", MethodToJson(scene.distance)},
    };
    if (scene.direction) {
      line["direction"] = MethodToJson(*scene.direction);
    }
    text += line.dump() + "\n";
  }
  return text;
}

void WriteReport(const std::filesystem::path& directory, const Report& report) {
  EnsureDirectory(directory);
  WriteText(directory / "aggregates.csv", AggregatesToCsv(report));
  WriteText(directory / "scenes.ndjson", ScenesToNdjson(report));
}

SweepResult Sweep(const ExperimentConfig& config, SweepAxis axis,
                  const std::vector<double>& values) {
  if (values.empty()) {
    throw InvalidArgument("sweep needs at least one value");
  }
  SweepResult result{axis, values, {}};
  for (const double value : values) {
    result.reports.push_back(RunExperiment(config.WithAxisValue(axis, value)));
  }
  return result;
}

std::string SweepToCsv(const SweepResult& result) {
  std::string csv = "axis,value,metric,score\n";
  const std::string axis(SweepAxisName(result.axis));
  for (size_t i = 0; i < result.values.size(); ++i) {
    for (const auto& [name, score] : result.reports[i].aggregates) {
      csv += axis + "," + FormatNumber(result.values[i]) + "," + name + "," +
             FormatNumber(score) + "\n";
    }
  }
  return csv;
}

void WriteSweep(const std::filesystem::path& directory,
                const SweepResult& result) {
  EnsureDirectory(directory);
  WriteText(directory / "sweep.csv", SweepToCsv(result));
}

TimingRecord TimeVoting(const ExperimentConfig& config, int repetitions) {
  config.Validate();
  repetitions = std::max(repetitions, 1);
  const CameraIntrinsics& intrinsics = config.scene.intrinsics;

  // Square voter block of num_voters pixels around the image center, with
  // the keypoint offset from it.
  const int side = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(config.voting.num_voters))));
  const int u0 = std::max(0, (intrinsics.width - side) / 2);
  const int v0 = std::max(0, (intrinsics.height - side) / 2);
  std::vector<Eigen::Vector2i> region;
  for (int v = v0; v < std::min(intrinsics.height, v0 + side); ++v) {
    for (int u = u0; u < std::min(intrinsics.width, u0 + side); ++u) {
      if (static_cast<int>(region.size()) < config.voting.num_voters) {
        region.emplace_back(u, v);
      }
    }
  }

  Rng rng = MakeRng(config.seed);
  const Eigen::Vector2d keypoint(u0 + 0.75 * side, v0 + 0.3 * side);
  const DistanceField field = CorruptField(
      BuildKdf(keypoint, intrinsics.height, intrinsics.width), config.noise,
      config.EffectiveLogScale(), rng);

  VotingConfig voting = config.voting;
  voting.rng_seed = MixSeed(config.seed);

  using Clock = std::chrono::steady_clock;
  std::vector<double> total_ms;
  std::vector<double> scoring_ms;
  VoterSet voters;
  for (const auto& pixel : region) {
    voters.Add(pixel.cast<double>(), field.at(pixel.x(), pixel.y()));
  }
  const auto hypotheses = GenerateHypotheses(voters, voting);
  volatile int sink = 0;
  for (int r = 0; r < repetitions; ++r) {
    const auto start = Clock::now();
    const Hypothesis best = VoteKeypoint(field, region, voting);
    const auto middle = Clock::now();
    const auto scores =
        ScoreHypotheses(hypotheses, voters, voting.inlier_threshold);
    const auto end = Clock::now();
    sink = sink + best.score + (scores.empty() ? 0 : scores.front());
    total_ms.push_back(
        std::chrono::duration<double, std::milli>(middle - start).count());
    scoring_ms.push_back(
        std::chrono::duration<double, std::milli>(end - middle).count());
  }

  TimingRecord record;
  record.num_voters = static_cast<int>(region.size());
  record.num_hypotheses = voting.num_hypotheses();
  record.repetitions = repetitions;
  record.median_ms = Median(total_ms);
  record.min_ms = *std::min_element(total_ms.begin(), total_ms.end());
  record.max_ms = *std::max_element(total_ms.begin(), total_ms.end());
  record.median_scoring_ms = Median(scoring_ms);
  return record;
}

std::string TimingToCsv(const TimingRecord& record) {
  std::ostringstream csv;
  csv << "num_voters,num_hypotheses,repetitions,median_ms,min_ms,max_ms,"
         "median_scoring_ms\n"
      << record.num_voters << ',' << record.num_hypotheses << ','
      << record.repetitions << ',' << FormatNumber(record.median_ms) << ','
      << FormatNumber(record.min_ms) << ',' << FormatNumber(record.max_ms)
      << ',' << FormatNumber(record.median_scoring_ms) << '\n';
  return csv.str();
}

}  // namespace kdfnet
