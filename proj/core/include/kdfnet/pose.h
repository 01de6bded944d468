#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "kdfnet/geom.h"

namespace kdfnet {

struct Correspondence {
  Eigen::Vector3d point3 = Eigen::Vector3d::Zero();  // model frame, meters
  Eigen::Vector2d point2 = Eigen::Vector2d::Zero();  // pixels
  double weight = 1.0;
};

struct PnPOptions {
  int max_iterations = 100;
  // Refinement stops once an accepted step has norm below this.
  double step_tolerance = 1e-10;
};

struct PnPResult {
  Pose pose;
  // RMS reprojection error of `pose`, pixels.
  double rmse = 0.0;
  int iterations = 0;
  // False when the iteration budget ran out first; `pose` is then the best
  // iterate seen.
  bool converged = false;
  // Half squared weighted residual norm after each accepted step, starting
  // with the initial estimate.
  std::vector<double> cost_history;
};

// Linear initialization (DLT for >= 6 general points, a plane homography for
// coplanar points, scaled orthography otherwise) followed by damped
// Gauss-Newton on the weighted pixel reprojection error. Throws
// InvalidArgument for fewer than 4 correspondences or negative weights and
// DegenerateConfiguration when the 3D points are collinear.
PnPResult SolvePnP(std::span<const Correspondence> correspondences,
                   const CameraIntrinsics& intrinsics,
                   const PnPOptions& options = {});

// Pose recovery for keypoints that all lie on an object's symmetry axis. Only
// the axis line is observable, so the returned rotation is the one with the
// smallest angle that maps the model axis onto the recovered axis direction.
// Needs >= 3 correspondences with distinct axis coordinates; throws
// DegenerateConfiguration when a 3D point lies off the axis.
PnPResult SolveAxialPnP(std::span<const Correspondence> correspondences,
                        const CameraIntrinsics& intrinsics,
                        const SymmetryGroup::Axis& axis,
                        const PnPOptions& options = {});

// Root mean square of the pixel reprojection error. Throws BehindCamera when
// a point has non-positive depth under `pose`.
double ReprojectionRmse(const Pose& pose,
                        std::span<const Correspondence> correspondences,
                        const CameraIntrinsics& intrinsics);

// Rectified stereo pair: the right camera sits `baseline` meters along the
// left camera's +x axis with identical orientation.
struct StereoRig {
  CameraIntrinsics left;
  CameraIntrinsics right;
  double baseline = 0.1;

  void Validate() const;
};

// Left-camera 3D point from a rectified keypoint pair. Throws
// DegenerateConfiguration for non-positive disparity.
Eigen::Vector3d TriangulateStereo(const Eigen::Vector2d& left_keypoint,
                                  const Eigen::Vector2d& right_keypoint,
                                  const StereoRig& rig);

// Least-squares rigid transform with target ~= pose.Apply(source). The
// rotation always has determinant +1. Throws InvalidArgument on length
// mismatch or fewer than 3 points and DegenerateConfiguration when the
// source points are collinear.
Pose ProcrustesFit(std::span<const Eigen::Vector3d> source,
                   std::span<const Eigen::Vector3d> target);

}  // namespace kdfnet
