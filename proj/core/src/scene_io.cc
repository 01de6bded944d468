#include "kdfnet/scene_io.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "kdfnet/error.h"
#include "kdfnet/field_io.h"
#include "kdfnet/object_model_io.h"

namespace kdfnet {
namespace {

std::string SceneStem(std::uint64_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "scene_%06llu",
                static_cast<unsigned long long>(index));
  return buffer;
}

}  // namespace

nlohmann::json EncodeMaskRle(const Mask& mask) {
  std::vector<std::uint64_t> counts;
  std::uint8_t current = 0;
  std::uint64_t run = 0;
  for (const std::uint8_t bit : mask.bits()) {
    if (bit == current) {
      ++run;
    } else {
      counts.push_back(run);
      current = bit;
      run = 1;
    }
  }
  counts.push_back(run);
  return {{"height", mask.height()}, {"width", mask.width()}, {"counts", counts}};
}

Mask DecodeMaskRle(const nlohmann::json& document) {
  const int height = document.at("height").get<int>();
  const int width = document.at("width").get<int>();
  const auto counts = document.at("counts").get<std::vector<std::uint64_t>>();
  Mask mask(height, width);
  const std::uint64_t total = static_cast<std::uint64_t>(height) * width;
  std::uint64_t position = 0;
  bool value = false;
  for (const std::uint64_t run : counts) {
    if (position + run > total) {
      throw InvalidArgument("mask run lengths exceed the mask size");
    }
    for (std::uint64_t i = 0; i < run; ++i, ++position) {
      mask.set(static_cast<int>(position % width),
               static_cast<int>(position / width), value);
    }
    value = !value;
  }
  if (position != total) {
    throw InvalidArgument("mask run lengths do not cover the mask");
  }
  return mask;
}

nlohmann::json SceneToJson(const SceneSample& scene, std::uint64_t index) {
  nlohmann::json keypoints = nlohmann::json::array();
  for (const auto& keypoint : scene.keypoints2d) {
    keypoints.push_back({keypoint.x(), keypoint.y()});
  }
  return {{"index", index},
          {"pose", PoseToJson(scene.pose)},
          {"keypoints2d", keypoints},
          {"projected_length", scene.projected_length},
          {"mask", EncodeMaskRle(scene.mask)}};
}

void WriteScene(const std::filesystem::path& directory,
                const SceneSample& scene, std::uint64_t index) {
  std::error_code error;
  std::filesystem::create_directories(directory, error);
  if (error) {
    throw IoError("cannot create " + directory.string() + ": " +
                  error.message());
  }
  const std::string stem = SceneStem(index);
  const auto json_path = directory / (stem + ".json");
  std::ofstream stream(json_path);
  if (!stream) {
    throw IoError("cannot open " + json_path.string() + " for writing");
  }
  stream << SceneToJson(scene, index).dump() << '\n';
  if (!stream) {
    throw IoError("failed writing " + json_path.string());
  }
  for (const auto& field : scene.gt_fields) {
    WriteField(directory / (stem + "_kp" +
                            std::to_string(field.keypoint_index()) + ".kdf"),
               field);
  }
}

SceneSample ReadScene(const std::filesystem::path& directory,
                      std::uint64_t index) {
  const std::string stem = SceneStem(index);
  const auto json_path = directory / (stem + ".json");
  std::ifstream stream(json_path);
  if (!stream) {
    throw IoError("cannot open " + json_path.string());
  }
  nlohmann::json document;
  try {
    stream >> document;
  } catch (const nlohmann::json::parse_error& error) {
    throw IoError(json_path.string() + ": " + error.what());
  }

  SceneSample scene;
  scene.pose = PoseFromJson(document.at("pose"));
  scene.mask = DecodeMaskRle(document.at("mask"));
  scene.projected_length = document.at("projected_length").get<double>();
  for (const auto& keypoint : document.at("keypoints2d")) {
    scene.keypoints2d.emplace_back(keypoint.at(0).get<double>(),
                                   keypoint.at(1).get<double>());
  }
  for (size_t k = 0; k < scene.keypoints2d.size(); ++k) {
    scene.gt_fields.push_back(ReadField(
        directory / (stem + "_kp" + std::to_string(k) + ".kdf")));
  }
  return scene;
}

}  // namespace kdfnet
