#include "kdfnet/kdf.h"

#include <cmath>
#include <limits>
#include <string>

#include "kdfnet/error.h"

namespace kdfnet {

DistanceField::DistanceField(int height, int width, int keypoint_index)
    : height_(height),
      width_(width),
      keypoint_index_(keypoint_index),
      values_(static_cast<size_t>(height) * width, 0.0f) {
  if (height < 1 || width < 1) {
    throw InvalidArgument("distance field must be at least 1x1");
  }
}

DistanceField::DistanceField(int height, int width, int keypoint_index,
                             std::vector<float> values)
    : height_(height),
      width_(width),
      keypoint_index_(keypoint_index),
      values_(std::move(values)) {
  if (height < 1 || width < 1) {
    throw InvalidArgument("distance field must be at least 1x1");
  }
  if (values_.size() != static_cast<size_t>(height) * width) {
    throw InvalidArgument("distance field value count does not match size");
  }
}

void LossConfig::Validate() const {
  if (!(r > 0.0)) {
    throw InvalidArgument("log scale r must be positive");
  }
  if (!(e > 0.0)) {
    throw InvalidArgument("smooth-L1 threshold e must be positive");
  }
  if (crop_radius && !(*crop_radius > 0.0)) {
    throw InvalidArgument("crop radius must be positive");
  }
}

double DefaultLogScale(int height, int width) {
  if (height == 256 && width == 256) {
    return 16.0;
  }
  const double diagonal =
      std::hypot(static_cast<double>(height), static_cast<double>(width));
  return std::sqrt(kMinParamDistance * diagonal);
}

DistanceField BuildKdf(const Eigen::Vector2d& keypoint, int height, int width,
                       int keypoint_index) {
  DistanceField field(height, width, keypoint_index);
  for (int v = 0; v < height; ++v) {
    const double dv = v - keypoint.y();
    for (int u = 0; u < width; ++u) {
      const double du = u - keypoint.x();
      field.at(u, v) = static_cast<float>(std::sqrt(du * du + dv * dv));
    }
  }
  return field;
}

double ToLogParam(double distance, double r) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw InvalidArgument("distance must be finite and non-negative, got " +
                          std::to_string(distance));
  }
  return std::log(std::max(distance, kMinParamDistance) / r);
}

double FromLogParam(double t, double r) { return r * std::exp(t); }

double SmoothL1(double residual, double e) {
  const double magnitude = std::abs(residual);
  if (magnitude < e) {
    return 0.5 * magnitude * magnitude / e;
  }
  return magnitude - 0.5 * e;
}

double KdfLoss(const DistanceField& pred, const DistanceField& gt,
               const LossConfig& config) {
  config.Validate();
  if (!pred.SameShape(gt)) {
    throw InvalidArgument("predicted and ground-truth fields differ in size");
  }

  const auto pred_values = pred.values();
  const auto gt_values = gt.values();
  double sum = 0.0;
  size_t support = 0;
  for (size_t i = 0; i < gt_values.size(); ++i) {
    if (config.crop_radius && gt_values[i] > *config.crop_radius) {
      continue;
    }
    const double residual =
        ToLogParam(gt_values[i], config.r) - ToLogParam(pred_values[i], config.r);
    sum += SmoothL1(residual, config.e);
    ++support;
  }
  if (support == 0) {
    throw InvalidArgument("loss support is empty under the crop radius");
  }
  return sum / static_cast<double>(support);
}

double SymmetricKdfLoss(std::span<const DistanceField> preds,
                        std::span<const DistanceField> gts,
                        const SymmetryGroup& symmetry,
                        const LossConfig& config) {
  if (preds.size() != gts.size()) {
    throw InvalidArgument("prediction and ground-truth lists differ in length");
  }
  const size_t count = preds.size();

  double best = std::numeric_limits<double>::infinity();
  for (const auto& permutation : symmetry.permutations()) {
    double total = 0.0;
    for (size_t k = 0; k < count; ++k) {
      size_t target = k;
      if (k < permutation.size()) {
        target = static_cast<size_t>(permutation[k]);
        if (target >= count) {
          throw InvalidArgument("symmetry permutation index " +
                                std::to_string(target) + " out of range");
        }
      }
      total += KdfLoss(preds[k], gts[target], config);
    }
    best = std::min(best, total);
  }
  return best;
}

}  // namespace kdfnet
