#include "kdfnet/object_model_io.h"

#include <fstream>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

nlohmann::json FlattenPoints(const std::vector<Eigen::Vector3d>& points) {
  nlohmann::json flat = nlohmann::json::array();
  for (const auto& point : points) {
    flat.push_back(point.x());
    flat.push_back(point.y());
    flat.push_back(point.z());
  }
  return flat;
}

std::vector<Eigen::Vector3d> UnflattenPoints(const nlohmann::json& flat,
                                             const char* field) {
  if (!flat.is_array() || flat.size() % 3 != 0) {
    throw InvalidArgument(std::string("'") + field +
                          "' must be a flat array of xyz triples");
  }
  std::vector<Eigen::Vector3d> points;
  points.reserve(flat.size() / 3);
  for (size_t i = 0; i < flat.size(); i += 3) {
    points.emplace_back(flat[i].get<double>(), flat[i + 1].get<double>(),
                        flat[i + 2].get<double>());
  }
  return points;
}

Eigen::Vector3d VectorFromJson(const nlohmann::json& value) {
  if (!value.is_array() || value.size() != 3) {
    throw InvalidArgument("expected a 3-vector");
  }
  return {value[0].get<double>(), value[1].get<double>(),
          value[2].get<double>()};
}

}  // namespace

nlohmann::json ObjectModelToJson(const ObjectModel& model) {
  nlohmann::json symmetry;
  symmetry["permutations"] = model.symmetry.permutations();
  if (const auto& axis = model.symmetry.axis()) {
    symmetry["axis"] = {
        {"point", {axis->point.x(), axis->point.y(), axis->point.z()}},
        {"direction",
         {axis->direction.x(), axis->direction.y(), axis->direction.z()}}};
  }
  return {{"points", FlattenPoints(model.points)},
          {"keypoints", FlattenPoints(model.keypoints)},
          {"diameter", model.diameter},
          {"symmetry", symmetry}};
}

ObjectModel ObjectModelFromJson(const nlohmann::json& document) {
  try {
    auto points = UnflattenPoints(document.at("points"), "points");
    auto keypoints = UnflattenPoints(document.at("keypoints"), "keypoints");

    std::vector<std::vector<int>> permutations;
    std::optional<SymmetryGroup::Axis> axis;
    if (document.contains("symmetry")) {
      const auto& symmetry = document.at("symmetry");
      if (symmetry.contains("permutations")) {
        permutations =
            symmetry.at("permutations").get<std::vector<std::vector<int>>>();
      }
      if (symmetry.contains("axis")) {
        axis = SymmetryGroup::Axis{
            VectorFromJson(symmetry.at("axis").at("point")),
            VectorFromJson(symmetry.at("axis").at("direction"))};
      }
    }
    if (permutations.empty()) {
      permutations.emplace_back();
    }
    SymmetryGroup group(std::move(permutations), axis);

    ObjectModel model = ObjectModel::Create(std::move(points),
                                            std::move(keypoints), group);
    if (document.contains("diameter")) {
      model.diameter = document.at("diameter").get<double>();
    }
    return model;
  } catch (const nlohmann::json::exception& error) {
    throw InvalidArgument(std::string("malformed object model: ") +
                          error.what());
  }
}

void WriteObjectModel(const std::filesystem::path& path,
                      const ObjectModel& model) {
  std::ofstream stream(path);
  if (!stream) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  stream << ObjectModelToJson(model).dump(2) << '\n';
  if (!stream) {
    throw IoError("failed writing " + path.string());
  }
}

ObjectModel ReadObjectModel(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open " + path.string());
  }
  nlohmann::json document;
  try {
    stream >> document;
  } catch (const nlohmann::json::parse_error& error) {
    throw IoError(path.string() + ": " + error.what());
  }
  return ObjectModelFromJson(document);
}

nlohmann::json PoseToJson(const Pose& pose) {
  nlohmann::json rotation = nlohmann::json::array();
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      rotation.push_back(pose.rotation(row, col));
    }
  }
  return {{"rotation", rotation},
          {"translation",
           {pose.translation.x(), pose.translation.y(), pose.translation.z()}}};
}

Pose PoseFromJson(const nlohmann::json& document) {
  const auto& rotation = document.at("rotation");
  if (!rotation.is_array() || rotation.size() != 9) {
    throw InvalidArgument("pose rotation must be 9 row-major values");
  }
  Eigen::Matrix3d matrix;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      matrix(row, col) = rotation[row * 3 + col].get<double>();
    }
  }
  return Pose::FromApproximateRotation(
      matrix, VectorFromJson(document.at("translation")));
}

}  // namespace kdfnet
