#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "kdfnet/geom.h"

namespace kdfnet {

// JSON layout:
//   {"points": [x0,y0,z0, x1,y1,z1, ...],
//    "keypoints": [x,y,z, ...],
//    "diameter": d,
//    "symmetry": {"permutations": [[0,1,...], ...],
//                 "axis": {"point": [x,y,z], "direction": [x,y,z]}}}
// "axis" is optional. On read the diameter is taken from the document when
// present and recomputed otherwise.
nlohmann::json ObjectModelToJson(const ObjectModel& model);
ObjectModel ObjectModelFromJson(const nlohmann::json& document);

void WriteObjectModel(const std::filesystem::path& path,
                      const ObjectModel& model);
ObjectModel ReadObjectModel(const std::filesystem::path& path);

nlohmann::json PoseToJson(const Pose& pose);
// Rotation is re-orthonormalized on read.
Pose PoseFromJson(const nlohmann::json& document);

}  // namespace kdfnet
