#include "kdfnet/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "kdfnet/error.h"

namespace kdfnet {

Mask::Mask(int height, int width, bool value)
    : height_(height),
      width_(width),
      bits_(static_cast<size_t>(height) * width, value ? 1 : 0) {
  if (height < 1 || width < 1) {
    throw InvalidArgument("mask must be at least 1x1");
  }
}

size_t Mask::Count() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<Eigen::Vector2i> Mask::Pixels() const {
  std::vector<Eigen::Vector2i> pixels;
  for (int v = 0; v < height_; ++v) {
    for (int u = 0; u < width_; ++u) {
      if (at(u, v)) {
        pixels.emplace_back(u, v);
      }
    }
  }
  return pixels;
}

bool Mask::IsSubsetOf(const Mask& other) const {
  if (height_ != other.height_ || width_ != other.width_) {
    return false;
  }
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) {
      return false;
    }
  }
  return true;
}

void StickConfig::Validate() const {
  if (!(length > 0.0) || !(radius > 0.0)) {
    throw InvalidArgument("stick length and radius must be positive");
  }
  if (!(radius < length)) {
    throw InvalidArgument("stick radius must be smaller than its length");
  }
  if (num_keypoints < 2) {
    throw InvalidArgument("stick needs at least 2 keypoints");
  }
  if (num_model_points < 2) {
    throw InvalidArgument("stick needs at least 2 model points");
  }
}

StickObject MakeStick(const StickConfig& config) {
  config.Validate();
  StickObject stick;
  stick.length = config.length;
  stick.radius = config.radius;
  for (int k = 0; k < config.num_keypoints; ++k) {
    const double fraction =
        static_cast<double>(k) / static_cast<double>(config.num_keypoints - 1);
    stick.keypoints.emplace_back(0.0, 0.0, (fraction - 0.5) * config.length);
  }
  return stick;
}

ObjectModel MakeStickModel(const StickConfig& config) {
  const StickObject stick = MakeStick(config);
  std::vector<Eigen::Vector3d> points;
  for (int i = 0; i < config.num_model_points; ++i) {
    const double fraction =
        static_cast<double>(i) / static_cast<double>(config.num_model_points - 1);
    points.emplace_back(0.0, 0.0, (fraction - 0.5) * config.length);
  }
  SymmetryGroup symmetry({std::vector<int>{}},
                         SymmetryGroup::Axis{Eigen::Vector3d::Zero(),
                                             Eigen::Vector3d::UnitZ()});
  if (config.num_keypoints < 4) {
    // ObjectModel requires four keypoints; the raw stick keeps fewer.
    throw InvalidArgument("stick model needs at least 4 keypoints");
  }
  return ObjectModel::Create(std::move(points), stick.keypoints,
                             std::move(symmetry));
}

void SceneConfig::Validate() const {
  intrinsics.Validate();
  stick.Validate();
  if (!(translation.z() > 0.5 * stick.length)) {
    throw BehindCamera("stick translation must keep the whole stick in front "
                       "of the camera");
  }
}

Eigen::Matrix3d SampleUniformRotation(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u1 = unit(rng);
  const double u2 = unit(rng);
  const double u3 = unit(rng);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const Eigen::Quaterniond q(b * std::cos(kTwoPi * u3),
                             a * std::sin(kTwoPi * u2),
                             a * std::cos(kTwoPi * u2),
                             b * std::sin(kTwoPi * u3));
  return q.normalized().toRotationMatrix();
}

Mask RenderStickMask(const StickObject& stick, const Pose& pose,
                     const CameraIntrinsics& intrinsics) {
  const Eigen::Vector3d first = pose.Apply(stick.first_end());
  const Eigen::Vector3d second = pose.Apply(stick.second_end());
  if (!(first.z() > 0.0) || !(second.z() > 0.0)) {
    throw BehindCamera("stick segment crosses behind the camera");
  }
  const Eigen::Vector2d a = ProjectCameraPoint(first, intrinsics);
  const Eigen::Vector2d b = ProjectCameraPoint(second, intrinsics);
  // Inverse depth is affine in image-space position along a projected
  // segment, so the projected radius interpolates linearly too.
  const double radius_a = stick.radius * intrinsics.fx / first.z();
  const double radius_b = stick.radius * intrinsics.fx / second.z();

  const Eigen::Vector2d segment = b - a;
  const double segment_squared = segment.squaredNorm();
  Mask mask(intrinsics.height, intrinsics.width);
  for (int v = 0; v < intrinsics.height; ++v) {
    for (int u = 0; u < intrinsics.width; ++u) {
      const Eigen::Vector2d pixel(u, v);
      double t = 0.0;
      double radius = std::max(radius_a, radius_b);
      if (segment_squared > 1e-12) {
        t = std::clamp((pixel - a).dot(segment) / segment_squared, 0.0, 1.0);
        radius = (1.0 - t) * radius_a + t * radius_b;
      }
      if ((pixel - (a + t * segment)).norm() <= radius) {
        mask.set(u, v, true);
      }
    }
  }
  return mask;
}

SceneSample MakeStickScene(const SceneConfig& config, Rng& rng) {
  config.Validate();
  const StickObject stick = MakeStick(config.stick);
  const CameraIntrinsics& intrinsics = config.intrinsics;

  SceneSample scene;
  scene.pose = Pose(SampleUniformRotation(rng), config.translation);
  scene.mask = RenderStickMask(stick, scene.pose, intrinsics);
  for (size_t k = 0; k < stick.keypoints.size(); ++k) {
    const Eigen::Vector2d projected =
        Project(stick.keypoints[k], scene.pose, intrinsics);
    scene.keypoints2d.push_back(projected);
    scene.gt_fields.push_back(BuildKdf(projected, intrinsics.height,
                                       intrinsics.width, static_cast<int>(k)));
  }
  scene.projected_length =
      (Project(stick.second_end(), scene.pose, intrinsics) -
       Project(stick.first_end(), scene.pose, intrinsics))
          .norm();
  return scene;
}

Mask OccludeKeypoints(const Mask& mask,
                      std::span<const Eigen::Vector2d> keypoints2d,
                      double radius) {
  if (!(radius > 0.0)) {
    throw InvalidArgument("occluder radius must be positive");
  }
  Mask occluded = mask;
  const double radius_squared = radius * radius;
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      if (!mask.at(u, v)) {
        continue;
      }
      for (const auto& keypoint : keypoints2d) {
        if ((Eigen::Vector2d(u, v) - keypoint).squaredNorm() <= radius_squared) {
          occluded.set(u, v, false);
          break;
        }
      }
    }
  }
  return occluded;
}

void NoiseModel::Validate() const {
  if (!(sigma_t >= 0.0) || !(sigma_direction >= 0.0)) {
    throw InvalidArgument("noise standard deviations must be non-negative");
  }
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw InvalidArgument("outlier fraction must lie in [0, 1)");
  }
  if (occluder_radius && !(*occluder_radius > 0.0)) {
    throw InvalidArgument("occluder radius must be positive");
  }
  if (!(occluder_length_fraction > 0.0)) {
    throw InvalidArgument("occluder length fraction must be positive");
  }
}

double NoiseModel::OccluderRadius(double projected_length) const {
  if (occluder_radius) {
    return *occluder_radius;
  }
  // Keep a sub-pixel floor so foreshortened sticks still get an occluder.
  return std::max(occluder_length_fraction * projected_length, 0.5);
}

namespace {

void CheckSupport(const Mask* support, int height, int width) {
  if (support && (support->height() != height || support->width() != width)) {
    throw InvalidArgument("noise support mask does not match the field size");
  }
}

}  // namespace

DistanceField CorruptField(const DistanceField& field, const NoiseModel& noise,
                           double log_scale, Rng& rng) {
  return CorruptField(field, noise, log_scale, rng, nullptr);
}

DistanceField CorruptField(const DistanceField& field, const NoiseModel& noise,
                           double log_scale, Rng& rng, const Mask* support) {
  noise.Validate();
  if (!(log_scale > 0.0)) {
    throw InvalidArgument("log scale must be positive");
  }
  CheckSupport(support, field.height(), field.width());
  DistanceField corrupted = field;
  if (noise.sigma_t == 0.0 && noise.outlier_fraction == 0.0) {
    return corrupted;
  }
  const double diagonal = std::hypot(static_cast<double>(field.height()),
                                     static_cast<double>(field.width()));
  std::normal_distribution<double> gaussian(0.0, noise.sigma_t);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int v = 0; v < field.height(); ++v) {
    for (int u = 0; u < field.width(); ++u) {
      if (support && !support->at(u, v)) {
        continue;
      }
      float& value = corrupted.at(u, v);
      if (noise.sigma_t > 0.0) {
        const double t = ToLogParam(value, log_scale) + gaussian(rng);
        value = static_cast<float>(FromLogParam(t, log_scale));
      }
      if (noise.outlier_fraction > 0.0 && unit(rng) < noise.outlier_fraction) {
        value = static_cast<float>(diagonal * unit(rng));
      }
    }
  }
  return corrupted;
}

DirectionField CorruptDirectionField(const DirectionField& field,
                                     const NoiseModel& noise, Rng& rng) {
  return CorruptDirectionField(field, noise, rng, nullptr);
}

DirectionField CorruptDirectionField(const DirectionField& field,
                                     const NoiseModel& noise, Rng& rng,
                                     const Mask* support) {
  noise.Validate();
  CheckSupport(support, field.height(), field.width());
  DirectionField corrupted = field;
  if (noise.sigma_direction == 0.0 && noise.outlier_fraction == 0.0) {
    return corrupted;
  }
  std::normal_distribution<double> gaussian(0.0, noise.sigma_direction);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (int v = 0; v < field.height(); ++v) {
    for (int u = 0; u < field.width(); ++u) {
      if (support && !support->at(u, v)) {
        continue;
      }
      Eigen::Vector2d& direction = corrupted.at(u, v);
      if (direction.isZero()) {
        continue;
      }
      if (noise.sigma_direction > 0.0) {
        const double angle = gaussian(rng);
        direction = Eigen::Rotation2Dd(angle) * direction;
      }
      if (noise.outlier_fraction > 0.0 && unit(rng) < noise.outlier_fraction) {
        const double angle = kTwoPi * unit(rng);
        direction = Eigen::Vector2d(std::cos(angle), std::sin(angle));
      }
    }
  }
  return corrupted;
}

}  // namespace kdfnet
