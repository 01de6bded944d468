#include "kdfnet/field_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

constexpr char kMagic[4] = {'K', 'D', 'F', '1'};

void PutU32(std::uint32_t value, std::uint8_t* out) {
  for (int i = 0; i < 4; ++i) {
    out[i] = static_cast<std::uint8_t>(value >> (8 * i));
  }
}

std::uint32_t GetU32(const std::uint8_t* in) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<std::uint32_t>(in[i]) << (8 * i);
  }
  return value;
}

}  // namespace

std::vector<std::uint8_t> EncodeField(const DistanceField& field) {
  std::vector<std::uint8_t> bytes(kFieldHeaderBytes + 4 * field.size());
  std::memcpy(bytes.data(), kMagic, 4);
  PutU32(static_cast<std::uint32_t>(field.height()), bytes.data() + 4);
  PutU32(static_cast<std::uint32_t>(field.width()), bytes.data() + 8);
  PutU32(static_cast<std::uint32_t>(field.keypoint_index()), bytes.data() + 12);

  std::uint8_t* out = bytes.data() + kFieldHeaderBytes;
  for (const float value : field.values()) {
    PutU32(std::bit_cast<std::uint32_t>(value), out);
    out += 4;
  }
  return bytes;
}

DistanceField DecodeField(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFieldHeaderBytes ||
      std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw InvalidArgument("not a KDF1 field file");
  }
  const std::uint32_t height = GetU32(bytes.data() + 4);
  const std::uint32_t width = GetU32(bytes.data() + 8);
  const std::uint32_t keypoint_index = GetU32(bytes.data() + 12);
  const std::uint64_t count = static_cast<std::uint64_t>(height) * width;
  if (bytes.size() != kFieldHeaderBytes + 4 * count) {
    throw InvalidArgument("field payload size does not match header " +
                          std::to_string(height) + "x" + std::to_string(width));
  }

  std::vector<float> values(count);
  const std::uint8_t* in = bytes.data() + kFieldHeaderBytes;
  for (auto& value : values) {
    value = std::bit_cast<float>(GetU32(in));
    in += 4;
  }
  return DistanceField(static_cast<int>(height), static_cast<int>(width),
                       static_cast<int>(keypoint_index), std::move(values));
}

void WriteField(const std::filesystem::path& path, const DistanceField& field) {
  const auto bytes = EncodeField(field);
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  stream.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
  if (!stream) {
    throw IoError("failed writing " + path.string());
  }
}

DistanceField ReadField(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw IoError("cannot open " + path.string());
  }
  const std::vector<std::uint8_t> bytes(
      (std::istreambuf_iterator<char>(stream)),
      std::istreambuf_iterator<char>());
  try {
    return DecodeField(bytes);
  } catch (const InvalidArgument& error) {
    throw IoError(path.string() + ": " + error.what());
  }
}

}  // namespace kdfnet
