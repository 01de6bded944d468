#include "kdfnet/geom.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "kdfnet/error.h"

namespace kdfnet {

Eigen::Matrix3d ProjectToRotation(const Eigen::Matrix3d& matrix) {
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d correction = Eigen::Matrix3d::Identity();
  correction(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant();
  return svd.matrixU() * correction * svd.matrixV().transpose();
}

double RotationAngularDistance(const Eigen::Matrix3d& a,
                               const Eigen::Matrix3d& b) {
  const Eigen::Quaterniond relative(a.transpose() * b);
  return 2.0 * std::atan2(relative.vec().norm(), std::abs(relative.w()));
}

Pose Pose::FromApproximateRotation(const Eigen::Matrix3d& matrix,
                                   const Eigen::Vector3d& translation) {
  return {ProjectToRotation(matrix), translation};
}

Pose Pose::Inverse() const {
  const Eigen::Matrix3d inverse_rotation = rotation.transpose();
  return {inverse_rotation, -(inverse_rotation * translation)};
}

Pose Pose::operator*(const Pose& other) const {
  return {rotation * other.rotation, rotation * other.translation + translation};
}

void CameraIntrinsics::Validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw InvalidArgument("focal lengths must be positive");
  }
  if (height < 1 || width < 1) {
    throw InvalidArgument("image size must be at least 1x1");
  }
}

double CameraIntrinsics::Diagonal() const {
  return std::hypot(static_cast<double>(height), static_cast<double>(width));
}

SymmetryGroup::SymmetryGroup(int size) : size_(size) {
  if (size < 0) {
    throw InvalidArgument("symmetry subset size must be non-negative");
  }
  std::vector<int> identity(size);
  std::iota(identity.begin(), identity.end(), 0);
  permutations_.push_back(std::move(identity));
}

SymmetryGroup::SymmetryGroup(std::vector<std::vector<int>> permutations,
                             std::optional<Axis> axis)
    : axis_(std::move(axis)) {
  if (axis_) {
    const double norm = axis_->direction.norm();
    if (!(norm > 0.0)) {
      throw InvalidArgument("symmetry axis direction must be non-zero");
    }
    axis_->direction /= norm;
  }
  size_ = permutations.empty() ? 0 : static_cast<int>(permutations[0].size());
  std::vector<int> identity(size_);
  std::iota(identity.begin(), identity.end(), 0);

  for (const auto& permutation : permutations) {
    if (static_cast<int>(permutation.size()) != size_) {
      throw InvalidArgument("symmetry permutations must have equal length");
    }
    std::vector<bool> seen(size_, false);
    for (const int index : permutation) {
      if (index < 0 || index >= size_ || seen[index]) {
        throw InvalidArgument("symmetry permutation is not a bijection");
      }
      seen[index] = true;
    }
  }

  const bool has_identity =
      std::find(permutations.begin(), permutations.end(), identity) !=
      permutations.end();
  if (!has_identity) {
    permutations_.push_back(identity);
  }
  for (auto& permutation : permutations) {
    permutations_.push_back(std::move(permutation));
  }
}

bool SymmetryGroup::IsNonTrivial() const {
  return permutations_.size() > 1 || axis_.has_value();
}

double ComputeDiameter(std::span<const Eigen::Vector3d> points) {
  double max_squared = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      max_squared = std::max(max_squared, (points[i] - points[j]).squaredNorm());
    }
  }
  return std::sqrt(max_squared);
}

ObjectModel ObjectModel::Create(std::vector<Eigen::Vector3d> points,
                                std::vector<Eigen::Vector3d> keypoints,
                                SymmetryGroup symmetry) {
  if (points.empty()) {
    throw InvalidArgument("object model needs at least one point");
  }
  if (keypoints.size() < 4) {
    throw InvalidArgument("object model needs at least four keypoints");
  }
  if (symmetry.size() > static_cast<int>(keypoints.size())) {
    throw InvalidArgument("symmetry group is larger than the keypoint set");
  }

  Eigen::Vector3d lower = points.front();
  Eigen::Vector3d upper = points.front();
  for (const auto& point : points) {
    lower = lower.cwiseMin(point);
    upper = upper.cwiseMax(point);
  }
  constexpr double kBoxSlack = 1e-9;
  for (const auto& keypoint : keypoints) {
    if ((keypoint.array() < lower.array() - kBoxSlack).any() ||
        (keypoint.array() > upper.array() + kBoxSlack).any()) {
      throw InvalidArgument("keypoint lies outside the model bounding box");
    }
  }

  ObjectModel model;
  model.diameter = ComputeDiameter(points);
  model.points = std::move(points);
  model.keypoints = std::move(keypoints);
  model.symmetry = std::move(symmetry);
  return model;
}

Eigen::Vector2d ProjectCameraPoint(const Eigen::Vector3d& point,
                                   const CameraIntrinsics& intrinsics) {
  if (!(point.z() > 0.0)) {
    throw BehindCamera("point has non-positive depth " +
                       std::to_string(point.z()));
  }
  return {intrinsics.fx * point.x() / point.z() + intrinsics.cx,
          intrinsics.fy * point.y() / point.z() + intrinsics.cy};
}

Eigen::Vector2d Project(const Eigen::Vector3d& point, const Pose& pose,
                        const CameraIntrinsics& intrinsics) {
  return ProjectCameraPoint(pose.Apply(point), intrinsics);
}

std::vector<Eigen::Vector3d> TransformPoints(
    std::span<const Eigen::Vector3d> points, const Pose& pose) {
  std::vector<Eigen::Vector3d> transformed;
  transformed.reserve(points.size());
  for (const auto& point : points) {
    transformed.push_back(pose.Apply(point));
  }
  return transformed;
}

std::vector<int> FarthestPointSampleIndices(
    std::span<const Eigen::Vector3d> points, int count,
    std::optional<int> seed_index) {
  const int num_points = static_cast<int>(points.size());
  if (num_points == 0) {
    throw InvalidArgument("farthest point sampling needs a non-empty set");
  }
  if (count < 0 || count > num_points) {
    throw InvalidArgument("cannot sample " + std::to_string(count) +
                          " points from a set of " +
                          std::to_string(num_points));
  }
  if (count == 0) {
    return {};
  }

  int first = 0;
  if (seed_index) {
    if (*seed_index < 0 || *seed_index >= num_points) {
      throw InvalidArgument("farthest point seed index out of range");
    }
    first = *seed_index;
  } else {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& point : points) {
      centroid += point;
    }
    centroid /= num_points;
    double best = -1.0;
    for (int i = 0; i < num_points; ++i) {
      const double distance = (points[i] - centroid).squaredNorm();
      if (distance > best) {
        best = distance;
        first = i;
      }
    }
  }

  std::vector<int> selected = {first};
  selected.reserve(count);
  std::vector<double> min_distance(num_points,
                                   std::numeric_limits<double>::infinity());
  int last = first;
  while (static_cast<int>(selected.size()) < count) {
    int next = -1;
    double best = -1.0;
    for (int i = 0; i < num_points; ++i) {
      min_distance[i] =
          std::min(min_distance[i], (points[i] - points[last]).squaredNorm());
      if (min_distance[i] > best) {
        best = min_distance[i];
        next = i;
      }
    }
    // Already-selected points sit at distance zero; with duplicates the
    // maximum may also be zero, so skip anything picked before.
    if (best == 0.0) {
      for (int i = 0; i < num_points; ++i) {
        if (std::find(selected.begin(), selected.end(), i) == selected.end()) {
          next = i;
          break;
        }
      }
    }
    selected.push_back(next);
    last = next;
  }
  return selected;
}

std::vector<Eigen::Vector3d> FarthestPointSample(
    std::span<const Eigen::Vector3d> points, int count,
    std::optional<int> seed_index) {
  std::vector<Eigen::Vector3d> sampled;
  for (const int index : FarthestPointSampleIndices(points, count, seed_index)) {
    sampled.push_back(points[index]);
  }
  return sampled;
}

}  // namespace kdfnet
