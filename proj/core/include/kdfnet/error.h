#pragma once

#include <stdexcept>
#include <string>

namespace kdfnet {

// Base class for all library failures. `code()` is a stable, machine-readable
// identifier that the CLI surfaces verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error("invalid_argument", message) {}
};

// A point has non-positive depth in the camera frame.
class BehindCamera : public Error {
 public:
  explicit BehindCamera(const std::string& message)
      : Error("behind_camera", message) {}
};

// Input geometry admits no finite / unique solution (collinear points,
// coincident centers, zero disparity, ...).
class DegenerateConfiguration : public Error {
 public:
  explicit DegenerateConfiguration(const std::string& message)
      : Error("degenerate_configuration", message) {}
};

// A voter region holds fewer pixels than the voting scheme needs.
class InsufficientVoters : public Error {
 public:
  explicit InsufficientVoters(const std::string& message)
      : Error("insufficient_voters", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace kdfnet
