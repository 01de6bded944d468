#include "kdfnet/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

// Models at or below this size use the exact all-pairs scan for ADD-S.
constexpr size_t kBruteForceAddsLimit = 2000;

void RequirePoints(const ObjectModel& model) {
  if (model.points.empty()) {
    throw InvalidArgument("object model has no points");
  }
}

// Exact nearest-neighbour queries over a fixed point set, bucketed on a
// uniform grid. Queries walk cubic shells outward until no unvisited cell can
// hold a closer point.
class GridIndex {
 public:
  explicit GridIndex(const std::vector<Eigen::Vector3d>& points)
      : points_(points) {
    lower_ = points.front();
    Eigen::Vector3d upper = points.front();
    for (const auto& point : points) {
      lower_ = lower_.cwiseMin(point);
      upper = upper.cwiseMax(point);
    }
    const Eigen::Vector3d extent = upper - lower_;
    const double volume_side =
        std::cbrt(std::max(extent.prod(), 1e-300) / static_cast<double>(points.size()));
    cell_ = std::max({volume_side, extent.maxCoeff() / 256.0, 1e-12});
    for (size_t i = 0; i < points.size(); ++i) {
      cells_[Key(CellOf(points[i]))].push_back(static_cast<int>(i));
    }
    max_ring_ = (CellOf(upper) - CellOf(lower_)).maxCoeff() + 1;
  }

  double NearestDistance(const Eigen::Vector3d& query) const {
    const Eigen::Vector3i center = CellOf(query);
    double best = std::numeric_limits<double>::infinity();
    // Rings beyond the grid extent (plus the query's offset) cannot add cells.
    const Eigen::Vector3i outside =
        (center.cwiseAbs() + Eigen::Vector3i::Constant(max_ring_));
    const int ring_limit = outside.maxCoeff();
    for (int ring = 0; ring <= ring_limit; ++ring) {
      // Every cell in this ring is at least (ring - 1) cells away.
      const double bound = (ring - 1) * cell_;
      if (ring > 0 && bound > 0.0 && bound * bound >= best) {
        break;
      }
      VisitRing(center, ring, query, best);
    }
    return std::sqrt(best);
  }

 private:
  Eigen::Vector3i CellOf(const Eigen::Vector3d& point) const {
    return ((point - lower_) / cell_).array().floor().cast<int>();
  }

  static std::int64_t Key(const Eigen::Vector3i& cell) {
    constexpr std::int64_t kSpan = 1 << 20;
    return ((static_cast<std::int64_t>(cell.x()) + kSpan) * (2 * kSpan) +
            (cell.y() + kSpan)) *
               (2 * kSpan) +
           (cell.z() + kSpan);
  }

  void VisitRing(const Eigen::Vector3i& center, int ring,
                 const Eigen::Vector3d& query, double& best) const {
    for (int dx = -ring; dx <= ring; ++dx) {
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dz = -ring; dz <= ring; ++dz) {
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring) {
            continue;
          }
          const auto found =
              cells_.find(Key(center + Eigen::Vector3i(dx, dy, dz)));
          if (found == cells_.end()) {
            continue;
          }
          for (const int index : found->second) {
            best = std::min(best, (points_[index] - query).squaredNorm());
          }
        }
      }
    }
  }

  const std::vector<Eigen::Vector3d>& points_;
  Eigen::Vector3d lower_;
  double cell_ = 1.0;
  int max_ring_ = 1;
  std::unordered_map<std::int64_t, std::vector<int>> cells_;
};

}  // namespace

void EvalThresholds::Validate() const {
  if (!(add_fraction > 0.0) || !(proj_pixels > 0.0) ||
      !(toy_proj_pixels > 0.0) || !(auc_max > 0.0)) {
    throw InvalidArgument("evaluation thresholds must be positive");
  }
}

double AddDistance(const Pose& pose, const Pose& gt_pose,
                   const ObjectModel& model) {
  RequirePoints(model);
  double sum = 0.0;
  for (const auto& point : model.points) {
    sum += (pose.Apply(point) - gt_pose.Apply(point)).norm();
  }
  return sum / static_cast<double>(model.points.size());
}

double AddsDistance(const Pose& pose, const Pose& gt_pose,
                    const ObjectModel& model) {
  RequirePoints(model);
  const auto estimated = TransformPoints(model.points, pose);
  const auto reference = TransformPoints(model.points, gt_pose);

  double sum = 0.0;
  if (reference.size() <= kBruteForceAddsLimit) {
    for (const auto& point : estimated) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& candidate : reference) {
        best = std::min(best, (point - candidate).norm());
      }
      sum += best;
    }
  } else {
    const GridIndex index(reference);
    for (const auto& point : estimated) {
      sum += index.NearestDistance(point);
    }
  }
  return sum / static_cast<double>(estimated.size());
}

double Proj2dDistance(const Pose& pose, const Pose& gt_pose,
                      const ObjectModel& model,
                      const CameraIntrinsics& intrinsics) {
  RequirePoints(model);
  double sum = 0.0;
  for (const auto& point : model.points) {
    sum += (Project(point, pose, intrinsics) -
            Project(point, gt_pose, intrinsics))
               .norm();
  }
  return sum / static_cast<double>(model.points.size());
}

double AddOrAddsDistance(const Pose& pose, const Pose& gt_pose,
                         const ObjectModel& model) {
  return model.symmetry.IsNonTrivial() ? AddsDistance(pose, gt_pose, model)
                                       : AddDistance(pose, gt_pose, model);
}

double Accuracy(std::span<const double> distances, double threshold) {
  if (distances.empty()) {
    throw InvalidArgument("accuracy of an empty distance list");
  }
  if (!(threshold > 0.0)) {
    throw InvalidArgument("accuracy threshold must be positive");
  }
  const auto correct = std::count_if(distances.begin(), distances.end(),
                                     [&](double d) { return d < threshold; });
  return static_cast<double>(correct) / static_cast<double>(distances.size());
}

double Auc(std::span<const double> distances, double max_threshold) {
  if (distances.empty()) {
    throw InvalidArgument("AUC of an empty distance list");
  }
  if (!(max_threshold > 0.0)) {
    throw InvalidArgument("AUC threshold must be positive");
  }
  // Distance d contributes the interval (d, max] on which it counts as
  // correct.
  double area = 0.0;
  for (const double d : distances) {
    area += std::max(0.0, max_threshold - std::max(d, 0.0));
  }
  return area / (max_threshold * static_cast<double>(distances.size()));
}

}  // namespace kdfnet
