#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace kdfnet {

// Rigid transform mapping model coordinates into the camera frame:
// x_cam = rotation * x_model + translation.
struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Pose() = default;
  Pose(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
      : rotation(rotation), translation(translation) {}

  static Pose Identity() { return {}; }

  // Builds a pose from an arbitrary 3x3 matrix by projecting it onto SO(3)
  // (nearest rotation in the Frobenius sense). Used for deserialized poses.
  static Pose FromApproximateRotation(const Eigen::Matrix3d& matrix,
                                      const Eigen::Vector3d& translation);

  Eigen::Vector3d Apply(const Eigen::Vector3d& point) const {
    return rotation * point + translation;
  }

  Pose Inverse() const;

  // (*this * other).Apply(x) == this->Apply(other.Apply(x)).
  Pose operator*(const Pose& other) const;
};

// Nearest proper rotation to `matrix` via SVD.
Eigen::Matrix3d ProjectToRotation(const Eigen::Matrix3d& matrix);

// Geodesic distance on SO(3) between two rotations, in radians.
double RotationAngularDistance(const Eigen::Matrix3d& a,
                               const Eigen::Matrix3d& b);

struct CameraIntrinsics {
  double fx = 500.0;
  double fy = 500.0;
  double cx = 128.0;
  double cy = 128.0;
  int height = 256;
  int width = 256;

  // Throws InvalidArgument unless fx, fy > 0 and height, width >= 1.
  void Validate() const;

  double Diagonal() const;
};

// Discrete symmetry permutations over a keypoint subset {0..S-1}, plus an
// optional continuous-symmetry axis (a line through `axis_point` along
// `axis_direction`, model frame). The identity is always present.
class SymmetryGroup {
 public:
  struct Axis {
    Eigen::Vector3d point = Eigen::Vector3d::Zero();
    Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
  };

  // Identity-only group over `size` keypoints.
  explicit SymmetryGroup(int size = 0);

  // Validates that every permutation is a bijection on {0..S-1}; inserts the
  // identity as the first element if absent.
  SymmetryGroup(std::vector<std::vector<int>> permutations,
                std::optional<Axis> axis = std::nullopt);

  int size() const { return size_; }
  const std::vector<std::vector<int>>& permutations() const {
    return permutations_;
  }
  const std::optional<Axis>& axis() const { return axis_; }

  // True when the group holds more than the identity or a continuous axis.
  bool IsNonTrivial() const;

 private:
  int size_ = 0;
  std::vector<std::vector<int>> permutations_;
  std::optional<Axis> axis_;
};

struct ObjectModel {
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> keypoints;
  double diameter = 0.0;
  SymmetryGroup symmetry;

  // Computes the diameter exactly and checks the model invariants: non-empty
  // points, at least four keypoints, keypoints inside the point bounding box.
  static ObjectModel Create(std::vector<Eigen::Vector3d> points,
                            std::vector<Eigen::Vector3d> keypoints,
                            SymmetryGroup symmetry);

  int num_keypoints() const { return static_cast<int>(keypoints.size()); }
};

// Maximum pairwise distance, computed exactly by enumerating all pairs.
double ComputeDiameter(std::span<const Eigen::Vector3d> points);

// Pinhole projection of pose.Apply(point). Throws BehindCamera when the
// camera-frame depth is not positive. The result may lie outside the image.
Eigen::Vector2d Project(const Eigen::Vector3d& point, const Pose& pose,
                        const CameraIntrinsics& intrinsics);

// Projection of a point already expressed in the camera frame.
Eigen::Vector2d ProjectCameraPoint(const Eigen::Vector3d& point,
                                   const CameraIntrinsics& intrinsics);

std::vector<Eigen::Vector3d> TransformPoints(
    std::span<const Eigen::Vector3d> points, const Pose& pose);

// Greedy farthest point sampling. The first pick is `seed_index` when given,
// otherwise the point farthest from the centroid. Every later pick maximizes
// the minimum distance to the already selected set. Ties resolve to the lowest
// index. Throws InvalidArgument when count > points.size() or points is empty.
std::vector<Eigen::Vector3d> FarthestPointSample(
    std::span<const Eigen::Vector3d> points, int count,
    std::optional<int> seed_index = std::nullopt);

// Same as FarthestPointSample but returns the selected indices.
std::vector<int> FarthestPointSampleIndices(
    std::span<const Eigen::Vector3d> points, int count,
    std::optional<int> seed_index = std::nullopt);

}  // namespace kdfnet
