#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "kdfnet/kdf.h"

namespace kdfnet {

// Binary field file: "KDF1", then u32 height, u32 width, u32 keypoint_index,
// then height*width float32 values in row-major order. Everything is
// little-endian regardless of host byte order.
inline constexpr size_t kFieldHeaderBytes = 16;

std::vector<std::uint8_t> EncodeField(const DistanceField& field);
DistanceField DecodeField(std::span<const std::uint8_t> bytes);

void WriteField(const std::filesystem::path& path, const DistanceField& field);
DistanceField ReadField(const std::filesystem::path& path);

}  // namespace kdfnet
