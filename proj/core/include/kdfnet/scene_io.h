#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "kdfnet/synth.h"

namespace kdfnet {

// Row-major run lengths alternating unset/set, starting with an unset run
// (which may be zero): {"height": H, "width": W, "counts": [...]}.
nlohmann::json EncodeMaskRle(const Mask& mask);
Mask DecodeMaskRle(const nlohmann::json& document);

// Scene document: index, pose, projected keypoints, projected length, and
// the RLE mask. Ground-truth fields are stored separately.
nlohmann::json SceneToJson(const SceneSample& scene, std::uint64_t index);

// Writes scene_<index>.json plus scene_<index>_kp<k>.kdf for every
// ground-truth field into `directory` (created when missing).
void WriteScene(const std::filesystem::path& directory,
                const SceneSample& scene, std::uint64_t index);

// Inverse of WriteScene.
SceneSample ReadScene(const std::filesystem::path& directory,
                      std::uint64_t index);

}  // namespace kdfnet
