#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "kdfnet/voting.h"

namespace kdfnet {

// Per-pixel unit vector pointing at one projected keypoint; the baseline
// representation used by direction-based voting. The pixel that coincides
// with the keypoint stores (0, 0).
class DirectionField {
 public:
  DirectionField() = default;
  DirectionField(int height, int width, int keypoint_index = 0);

  int height() const { return height_; }
  int width() const { return width_; }
  int keypoint_index() const { return keypoint_index_; }

  const Eigen::Vector2d& at(int u, int v) const { return values_[Index(u, v)]; }
  Eigen::Vector2d& at(int u, int v) { return values_[Index(u, v)]; }

  std::span<const Eigen::Vector2d> values() const { return values_; }

 private:
  size_t Index(int u, int v) const {
    return static_cast<size_t>(v) * width_ + u;
  }

  int height_ = 0;
  int width_ = 0;
  int keypoint_index_ = 0;
  std::vector<Eigen::Vector2d> values_;
};

DirectionField BuildDirectionField(const Eigen::Vector2d& keypoint, int height,
                                   int width, int keypoint_index = 0);

// Rays whose direction cross product falls below this are treated as
// parallel and produce no hypothesis.
inline constexpr double kMinRaySine = 1e-6;

// Ray-pair hypotheses from random voter pairs, scored by angular agreement.
// Uses the same voter budget and hypothesis budget (3N) as distance voting.
// When every sampled pair is near-parallel the voter centroid is returned
// with reliable = false. Throws InsufficientVoters below 2 region pixels.
Hypothesis DirectionVoteKeypoint(const DirectionField& field,
                                 std::span<const Eigen::Vector2i> region_pixels,
                                 const VotingConfig& config);
Hypothesis DirectionVoteKeypoint(const DirectionField& field,
                                 const PixelRegion& region,
                                 const VotingConfig& config);

}  // namespace kdfnet
