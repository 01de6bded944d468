#pragma once

#include <span>

#include "kdfnet/geom.h"

namespace kdfnet {

struct EvalThresholds {
  // Fraction of the model diameter for ADD(-S) correctness.
  double add_fraction = 0.1;
  // 2D projection threshold, pixels.
  double proj_pixels = 5.0;
  // 2D projection threshold used by the thin-stick experiment, pixels.
  double toy_proj_pixels = 1.0;
  // Upper end of the ADD(-S) AUC integration range, meters.
  double auc_max = 0.10;

  void Validate() const;
};

// Mean distance between corresponding model points under the two poses.
double AddDistance(const Pose& pose, const Pose& gt_pose,
                   const ObjectModel& model);

// Mean distance from each point under `pose` to the closest point under
// `gt_pose`. Exact for every model size; larger models go through a uniform
// grid instead of the all-pairs scan.
double AddsDistance(const Pose& pose, const Pose& gt_pose,
                    const ObjectModel& model);

// Mean pixel distance between the projections under the two poses. Throws
// BehindCamera when a model point has non-positive depth under either pose.
double Proj2dDistance(const Pose& pose, const Pose& gt_pose,
                      const ObjectModel& model,
                      const CameraIntrinsics& intrinsics);

// ADD for asymmetric models, ADD-S when the model's symmetry group is
// non-trivial.
double AddOrAddsDistance(const Pose& pose, const Pose& gt_pose,
                         const ObjectModel& model);

// Fraction of distances strictly below `threshold`. Throws InvalidArgument
// for an empty list or a non-positive threshold.
double Accuracy(std::span<const double> distances, double threshold);

// Area under the accuracy-vs-threshold curve on [0, max_threshold],
// normalized to [0, 1]. Evaluated exactly from the step function.
double Auc(std::span<const double> distances, double max_threshold);

}  // namespace kdfnet
