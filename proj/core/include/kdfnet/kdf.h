#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "kdfnet/geom.h"

namespace kdfnet {

// Per-pixel distance to one projected keypoint. Element (u, v) is column u,
// row v; storage is row-major, i.e. values[v * width + u].
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(int height, int width, int keypoint_index = 0);
  DistanceField(int height, int width, int keypoint_index,
                std::vector<float> values);

  int height() const { return height_; }
  int width() const { return width_; }
  int keypoint_index() const { return keypoint_index_; }
  size_t size() const { return values_.size(); }

  float at(int u, int v) const { return values_[Index(u, v)]; }
  float& at(int u, int v) { return values_[Index(u, v)]; }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

  bool SameShape(const DistanceField& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  bool operator==(const DistanceField& other) const = default;

 private:
  size_t Index(int u, int v) const {
    return static_cast<size_t>(v) * width_ + u;
  }

  int height_ = 0;
  int width_ = 0;
  int keypoint_index_ = 0;
  std::vector<float> values_;
};

struct LossConfig {
  // Scale of the log parameterization t = log(D / r).
  double r = 16.0;
  // Smooth-L1 switch point between the quadratic and linear branches.
  double e = 1.0;
  // When set, the loss is averaged only over pixels whose ground-truth
  // distance is <= crop_radius.
  std::optional<double> crop_radius = 64.0;

  void Validate() const;
};

// Distances below this floor are clamped before taking the logarithm.
inline constexpr double kMinParamDistance = 0.5;

// r = 16 for 256x256 images; otherwise the geometric mean of the half-pixel
// floor and the image diagonal.
double DefaultLogScale(int height, int width);

DistanceField BuildKdf(const Eigen::Vector2d& keypoint, int height, int width,
                       int keypoint_index = 0);

// log(max(D, 0.5) / r). Throws InvalidArgument for negative or non-finite D.
double ToLogParam(double distance, double r);
double FromLogParam(double t, double r);

// Smooth-L1 on a single parameterized residual.
double SmoothL1(double residual, double e);

// Mean smooth-L1 of (t(gt) - t(pred)) over the loss support. Throws
// InvalidArgument on shape mismatch or an empty support.
double KdfLoss(const DistanceField& pred, const DistanceField& gt,
               const LossConfig& config);

// min over the group's permutations s of sum_k KdfLoss(preds[k], gts[s[k]]).
// Fields past the group's subset size are compared with the identity.
double SymmetricKdfLoss(std::span<const DistanceField> preds,
                        std::span<const DistanceField> gts,
                        const SymmetryGroup& symmetry,
                        const LossConfig& config);

}  // namespace kdfnet
