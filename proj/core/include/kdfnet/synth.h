#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "kdfnet/direction_voting.h"
#include "kdfnet/geom.h"
#include "kdfnet/kdf.h"
#include "kdfnet/random.h"

namespace kdfnet {

// Binary H x W image mask; (u, v) = (column, row), row-major storage.
class Mask {
 public:
  Mask() = default;
  Mask(int height, int width, bool value = false);

  int height() const { return height_; }
  int width() const { return width_; }

  bool at(int u, int v) const { return bits_[Index(u, v)] != 0; }
  void set(int u, int v, bool value) { bits_[Index(u, v)] = value ? 1 : 0; }

  size_t Count() const;
  bool Empty() const { return Count() == 0; }
  // Set pixels in row-major order.
  std::vector<Eigen::Vector2i> Pixels() const;
  // True when every set pixel of *this is also set in `other`.
  bool IsSubsetOf(const Mask& other) const;

  std::span<const std::uint8_t> bits() const { return bits_; }

  bool operator==(const Mask& other) const = default;

 private:
  size_t Index(int u, int v) const {
    return static_cast<size_t>(v) * width_ + u;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Thin rod idealized as a capsule: a segment of `length` along the model z
// axis, centered at the origin, swept by a sphere of `radius`.
struct StickConfig {
  double length = 0.15;
  double radius = 0.0015;
  int num_keypoints = 4;
  // Model points sampled along the axis for the pose metrics.
  int num_model_points = 65;

  void Validate() const;
};

struct StickObject {
  double length = 0.0;
  double radius = 0.0;
  // Equally spaced along the axis, endpoints included.
  std::vector<Eigen::Vector3d> keypoints;

  Eigen::Vector3d first_end() const { return {0.0, 0.0, -0.5 * length}; }
  Eigen::Vector3d second_end() const { return {0.0, 0.0, 0.5 * length}; }
};

StickObject MakeStick(const StickConfig& config);

// Axis samples as model points, the stick keypoints, and a continuous
// symmetry about the z axis.
ObjectModel MakeStickModel(const StickConfig& config);

struct SceneConfig {
  CameraIntrinsics intrinsics;
  // Shared by every scene; only the rotation is random.
  Eigen::Vector3d translation = Eigen::Vector3d(0.0, 0.0, 0.5);
  StickConfig stick;

  void Validate() const;
};

struct SceneSample {
  Pose pose;
  Mask mask;
  std::vector<Eigen::Vector2d> keypoints2d;
  std::vector<DistanceField> gt_fields;
  // Length of the projected axis segment, pixels.
  double projected_length = 0.0;
};

// Uniformly distributed rotation (subgroup algorithm on unit quaternions).
Eigen::Matrix3d SampleUniformRotation(Rng& rng);

// Capsule mask of the stick under `pose`: pixels within the projected radius
// of the projected axis segment. The projected radius varies with inverse
// depth along the segment. Throws BehindCamera when the segment is not fully
// in front of the camera.
Mask RenderStickMask(const StickObject& stick, const Pose& pose,
                     const CameraIntrinsics& intrinsics);

// Random-rotation scene at the configured translation, with ground-truth
// distance fields for every keypoint.
SceneSample MakeStickScene(const SceneConfig& config, Rng& rng);

// Removes every pixel within `radius` pixels of any keypoint. Throws
// InvalidArgument for a non-positive radius.
Mask OccludeKeypoints(const Mask& mask,
                      std::span<const Eigen::Vector2d> keypoints2d,
                      double radius);

// Stand-in for a learned predictor's error.
struct NoiseModel {
  // Std-dev of additive Gaussian noise on t = log(D / r).
  double sigma_t = 0.0;
  // Probability that a pixel's value is replaced by a uniform draw.
  double outlier_fraction = 0.0;
  // Keypoint occluder radius in pixels; unset means a fraction of the
  // projected stick length.
  std::optional<double> occluder_radius;
  double occluder_length_fraction = 0.05;
  // Std-dev of the angular noise on direction fields, radians.
  double sigma_direction = 0.0;

  void Validate() const;
  double OccluderRadius(double projected_length) const;
};

// Per pixel: t <- t + N(0, sigma_t^2), D <- r * exp(t); then with probability
// outlier_fraction D <- Uniform(0, image diagonal). With zero noise the field
// is returned unchanged bit for bit.
DistanceField CorruptField(const DistanceField& field, const NoiseModel& noise,
                           double log_scale, Rng& rng);
// Same model restricted to the set pixels of `support` (null means every
// pixel); the remaining pixels keep their input values.
DistanceField CorruptField(const DistanceField& field, const NoiseModel& noise,
                           double log_scale, Rng& rng, const Mask* support);

// Per pixel: rotate by N(0, sigma_direction^2) radians; then with probability
// outlier_fraction replace with a uniformly random unit vector. The (0, 0)
// sentinel stays untouched.
DirectionField CorruptDirectionField(const DirectionField& field,
                                     const NoiseModel& noise, Rng& rng);
DirectionField CorruptDirectionField(const DirectionField& field,
                                     const NoiseModel& noise, Rng& rng,
                                     const Mask* support);

}  // namespace kdfnet
