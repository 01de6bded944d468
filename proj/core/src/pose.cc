#include "kdfnet/pose.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

// Relative singular-value floors for the shape tests on centered 3D points.
constexpr double kCollinearTolerance = 1e-9;
constexpr double kCoplanarTolerance = 1e-6;

Eigen::Matrix3d Skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

Eigen::Matrix3d ExpSO3(const Eigen::Vector3d& omega) {
  const double angle = omega.norm();
  if (angle == 0.0) {
    return Eigen::Matrix3d::Identity();
  }
  return Eigen::AngleAxisd(angle, omega / angle).toRotationMatrix();
}

Eigen::Vector2d Normalize(const Eigen::Vector2d& pixel,
                          const CameraIntrinsics& intrinsics) {
  return {(pixel.x() - intrinsics.cx) / intrinsics.fx,
          (pixel.y() - intrinsics.cy) / intrinsics.fy};
}

struct PointShape {
  Eigen::Vector3d centroid;
  Eigen::Matrix3d basis;  // columns: principal directions, descending
  Eigen::Vector3d singular_values;
  double scale;  // RMS distance to the centroid
};

PointShape AnalyzeShape(std::span<const Eigen::Vector3d> points) {
  PointShape shape;
  shape.centroid.setZero();
  for (const auto& point : points) {
    shape.centroid += point;
  }
  shape.centroid /= static_cast<double>(points.size());

  Eigen::MatrixXd centered(points.size(), 3);
  for (size_t i = 0; i < points.size(); ++i) {
    centered.row(static_cast<Eigen::Index>(i)) =
        (points[i] - shape.centroid).transpose();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  shape.singular_values = svd.singularValues();
  shape.basis = svd.matrixV();
  if (shape.basis.determinant() < 0.0) {
    shape.basis.col(2) = -shape.basis.col(2);
  }
  shape.scale =
      shape.singular_values.norm() / std::sqrt(static_cast<double>(points.size()));
  return shape;
}

bool IsCollinear(const PointShape& shape) {
  return !(shape.singular_values(0) > 0.0) ||
         shape.singular_values(1) <= kCollinearTolerance * shape.singular_values(0);
}

// Levenberg-Marquardt over a small parameter block. `evaluate` fills the
// residual vector and Jacobian for a state and returns false when the state
// is invalid (e.g. a point moved behind the camera); `update` applies a
// parameter increment.
template <typename State>
struct LmOutcome {
  State state;
  double cost;
  int iterations;
  bool converged;
  std::vector<double> cost_history;
};

template <int kParams, typename State, typename Evaluate, typename Update>
LmOutcome<State> Minimize(
    State state, Evaluate&& evaluate, Update&& update,
    const PnPOptions& options) {
  using Jacobian = Eigen::Matrix<double, Eigen::Dynamic, kParams>;
  using Step = Eigen::Matrix<double, kParams, 1>;
  using Normal = Eigen::Matrix<double, kParams, kParams>;

  Eigen::VectorXd residuals;
  Jacobian jacobian;
  if (!evaluate(state, residuals, jacobian)) {
    throw BehindCamera("initial pose places points behind the camera");
  }
  double cost = 0.5 * residuals.squaredNorm();
  std::vector<double> history = {cost};

  Normal normal = jacobian.transpose() * jacobian;
  Step gradient = jacobian.transpose() * residuals;
  double lambda = 1e-4 * std::max(normal.diagonal().maxCoeff(), 1e-12);

  int iteration = 0;
  bool converged = false;
  Eigen::VectorXd candidate_residuals;
  Jacobian candidate_jacobian;
  while (iteration < options.max_iterations) {
    ++iteration;
    Normal damped = normal;
    for (int i = 0; i < kParams; ++i) {
      damped(i, i) += lambda * std::max(normal(i, i), 1e-12);
    }
    const Step step = -damped.ldlt().solve(gradient);
    if (!step.allFinite() || step.norm() < options.step_tolerance) {
      converged = true;
      break;
    }

    const State candidate = update(state, step);
    if (evaluate(candidate, candidate_residuals, candidate_jacobian)) {
      const double candidate_cost = 0.5 * candidate_residuals.squaredNorm();
      if (candidate_cost < cost) {
        state = candidate;
        cost = candidate_cost;
        history.push_back(cost);
        residuals.swap(candidate_residuals);
        jacobian.swap(candidate_jacobian);
        normal = jacobian.transpose() * jacobian;
        gradient = jacobian.transpose() * residuals;
        lambda = std::max(lambda / 10.0, 1e-15);
        continue;
      }
    }
    lambda *= 10.0;
    if (lambda > 1e16) {
      // No descent direction left at machine precision.
      converged = true;
      break;
    }
  }
  return {state, cost, iteration, converged, std::move(history)};
}

bool EvaluatePnP(const Pose& pose, std::span<const Correspondence> data,
                 const CameraIntrinsics& intrinsics, Eigen::VectorXd& residuals,
                 Eigen::Matrix<double, Eigen::Dynamic, 6>& jacobian) {
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  residuals.resize(2 * n);
  jacobian.resize(2 * n, 6);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& c = data[i];
    const Eigen::Vector3d rotated = pose.rotation * c.point3;
    const Eigen::Vector3d camera = rotated + pose.translation;
    if (!(camera.z() > 0.0)) {
      return false;
    }
    const double sqrt_weight = std::sqrt(c.weight);
    const double inv_z = 1.0 / camera.z();
    const Eigen::Vector2d projected(
        intrinsics.fx * camera.x() * inv_z + intrinsics.cx,
        intrinsics.fy * camera.y() * inv_z + intrinsics.cy);
    residuals.segment<2>(2 * i) = sqrt_weight * (projected - c.point2);

    Eigen::Matrix<double, 2, 3> d_projection;
    d_projection << intrinsics.fx * inv_z, 0.0,
        -intrinsics.fx * camera.x() * inv_z * inv_z, 0.0, intrinsics.fy * inv_z,
        -intrinsics.fy * camera.y() * inv_z * inv_z;
    jacobian.block<2, 3>(2 * i, 0) = sqrt_weight * d_projection * -Skew(rotated);
    jacobian.block<2, 3>(2 * i, 3) = sqrt_weight * d_projection;
  }
  return true;
}

double PositiveDepthFraction(const Pose& pose,
                             std::span<const Correspondence> data) {
  int positive = 0;
  for (const auto& c : data) {
    positive += pose.Apply(c.point3).z() > 0.0;
  }
  return static_cast<double>(positive) / static_cast<double>(data.size());
}

// DLT on normalized image coordinates with the 3D points centered and scaled.
std::optional<Pose> InitializeDlt(std::span<const Correspondence> data,
                                  const CameraIntrinsics& intrinsics,
                                  const PointShape& shape) {
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd system(2 * n, 12);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector3d x = (data[i].point3 - shape.centroid) / shape.scale;
    const Eigen::Vector2d m = Normalize(data[i].point2, intrinsics);
    const Eigen::Vector4d h(x.x(), x.y(), x.z(), 1.0);
    system.row(2 * i) << h.transpose(), Eigen::RowVector4d::Zero(),
        -m.x() * h.transpose();
    system.row(2 * i + 1) << Eigen::RowVector4d::Zero(), h.transpose(),
        -m.y() * h.transpose();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd p = svd.matrixV().col(11);
  Eigen::Matrix<double, 3, 4> projection;
  projection << p.segment<4>(0).transpose(), p.segment<4>(4).transpose(),
      p.segment<4>(8).transpose();

  for (const double sign : {1.0, -1.0}) {
    const Eigen::Matrix<double, 3, 4> signed_projection = sign * projection;
    const Eigen::Matrix3d block = signed_projection.leftCols<3>();
    const Eigen::JacobiSVD<Eigen::Matrix3d> block_svd(block);
    const double mu = block_svd.singularValues().mean() / shape.scale;
    if (!(mu > 0.0) || block.determinant() <= 0.0) {
      continue;
    }
    Pose pose;
    pose.rotation = ProjectToRotation(block);
    pose.translation =
        signed_projection.col(3) / mu - pose.rotation * shape.centroid;
    if (PositiveDepthFraction(pose, data) > 0.5) {
      return pose;
    }
  }
  return std::nullopt;
}

// Homography from the plane's 2D coordinates to normalized image points.
std::optional<Pose> InitializePlanar(std::span<const Correspondence> data,
                                     const CameraIntrinsics& intrinsics,
                                     const PointShape& shape) {
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  const Eigen::Matrix3d& basis = shape.basis;
  Eigen::MatrixXd system(2 * n, 9);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector3d local =
        basis.transpose() * (data[i].point3 - shape.centroid) / shape.scale;
    const Eigen::Vector3d h(local.x(), local.y(), 1.0);
    const Eigen::Vector2d m = Normalize(data[i].point2, intrinsics);
    system.row(2 * i) << h.transpose(), Eigen::RowVector3d::Zero(),
        -m.x() * h.transpose();
    system.row(2 * i + 1) << Eigen::RowVector3d::Zero(), h.transpose(),
        -m.y() * h.transpose();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd p = svd.matrixV().col(8);
  Eigen::Matrix3d homography;
  homography << p.segment<3>(0).transpose(), p.segment<3>(3).transpose(),
      p.segment<3>(6).transpose();

  for (const double sign : {1.0, -1.0}) {
    const Eigen::Matrix3d h = sign * homography;
    const double norm = 0.5 * (h.col(0).norm() + h.col(1).norm());
    if (!(norm > 0.0)) {
      continue;
    }
    Eigen::Matrix3d approx;
    approx.col(0) = h.col(0) / norm;
    approx.col(1) = h.col(1) / norm;
    approx.col(2) = approx.col(0).cross(approx.col(1));
    const Eigen::Matrix3d plane_rotation = ProjectToRotation(approx);
    const Eigen::Vector3d plane_translation = h.col(2) / norm;
    if (plane_translation.z() <= 0.0) {
      continue;
    }
    // camera = R_p * (B^T (X - c) / s) * s + t_p * s  (undo the scaling)
    Pose pose;
    pose.rotation = plane_rotation * basis.transpose();
    pose.translation =
        plane_translation * shape.scale - pose.rotation * shape.centroid;
    return pose;
  }
  return std::nullopt;
}

// Scaled orthographic fit; returns both mirror-image solutions.
std::vector<Pose> InitializeWeakPerspective(
    std::span<const Correspondence> data, const CameraIntrinsics& intrinsics,
    const PointShape& shape) {
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  Eigen::Vector2d image_centroid = Eigen::Vector2d::Zero();
  for (const auto& c : data) {
    image_centroid += Normalize(c.point2, intrinsics);
  }
  image_centroid /= static_cast<double>(n);

  Eigen::MatrixXd object(n, 3);
  Eigen::MatrixXd image(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    object.row(i) = (data[i].point3 - shape.centroid).transpose();
    image.row(i) =
        (Normalize(data[i].point2, intrinsics) - image_centroid).transpose();
  }
  // image ~= object * A^T with A the scaled top two rows of R.
  const Eigen::MatrixXd solution =
      object.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(image);
  Eigen::Vector3d row0 = solution.col(0);
  Eigen::Vector3d row1 = solution.col(1);
  const double scale = 0.5 * (row0.norm() + row1.norm());
  if (!(scale > 0.0)) {
    return {};
  }

  std::vector<Pose> poses;
  for (const double mirror : {1.0, -1.0}) {
    Eigen::Matrix3d approx;
    approx.row(0) = row0.transpose() / scale;
    approx.row(1) = row1.transpose() / scale;
    approx.row(2) = approx.row(0).cross(approx.row(1));
    Eigen::Matrix3d rotation = ProjectToRotation(approx);
    if (mirror < 0.0) {
      // Reflect the object through the image plane: flip the depth-coupled
      // entries, keeping the projected rows.
      rotation(0, 2) = -rotation(0, 2);
      rotation(1, 2) = -rotation(1, 2);
      rotation(2, 0) = -rotation(2, 0);
      rotation(2, 1) = -rotation(2, 1);
      rotation = ProjectToRotation(rotation);
    }
    const double depth = 1.0 / scale;
    Pose pose;
    pose.rotation = rotation;
    const Eigen::Vector3d rotated_centroid = rotation * shape.centroid;
    pose.translation = Eigen::Vector3d(image_centroid.x() * depth,
                                       image_centroid.y() * depth, depth) -
                       rotated_centroid;
    poses.push_back(pose);
  }
  return poses;
}

}  // namespace

double ReprojectionRmse(const Pose& pose,
                        std::span<const Correspondence> correspondences,
                        const CameraIntrinsics& intrinsics) {
  if (correspondences.empty()) {
    throw InvalidArgument("no correspondences");
  }
  double sum = 0.0;
  for (const auto& c : correspondences) {
    sum += (Project(c.point3, pose, intrinsics) - c.point2).squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(correspondences.size()));
}

PnPResult SolvePnP(std::span<const Correspondence> correspondences,
                   const CameraIntrinsics& intrinsics,
                   const PnPOptions& options) {
  intrinsics.Validate();
  if (correspondences.size() < 4) {
    throw InvalidArgument("PnP needs at least 4 correspondences, got " +
                          std::to_string(correspondences.size()));
  }
  std::vector<Eigen::Vector3d> points;
  for (const auto& c : correspondences) {
    if (!(c.weight >= 0.0)) {
      throw InvalidArgument("correspondence weights must be non-negative");
    }
    points.push_back(c.point3);
  }
  const PointShape shape = AnalyzeShape(points);
  if (IsCollinear(shape)) {
    throw DegenerateConfiguration("PnP 3D points are collinear");
  }

  std::vector<Pose> initial;
  const bool coplanar =
      shape.singular_values(2) <= kCoplanarTolerance * shape.singular_values(0);
  if (coplanar) {
    if (auto pose = InitializePlanar(correspondences, intrinsics, shape)) {
      initial.push_back(*pose);
    }
  } else if (correspondences.size() >= 6) {
    if (auto pose = InitializeDlt(correspondences, intrinsics, shape)) {
      initial.push_back(*pose);
    }
  }
  if (initial.empty()) {
    initial = InitializeWeakPerspective(correspondences, intrinsics, shape);
  }

  auto evaluate = [&](const Pose& pose, Eigen::VectorXd& residuals,
                      Eigen::Matrix<double, Eigen::Dynamic, 6>& jacobian) {
    return EvaluatePnP(pose, correspondences, intrinsics, residuals, jacobian);
  };
  auto update = [](const Pose& pose, const Eigen::Matrix<double, 6, 1>& step) {
    return Pose(ExpSO3(step.head<3>()) * pose.rotation,
                pose.translation + step.tail<3>());
  };

  std::optional<PnPResult> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Pose& start : initial) {
    if (PositiveDepthFraction(start, correspondences) < 1.0) {
      continue;
    }
    const auto outcome =
        Minimize<6, Pose>(start, evaluate, update, options);
    if (outcome.cost < best_cost) {
      best_cost = outcome.cost;
      best = PnPResult{outcome.state, 0.0, outcome.iterations,
                       outcome.converged, outcome.cost_history};
    }
  }
  if (!best) {
    throw DegenerateConfiguration(
        "PnP initialization found no pose with all points in front of the "
        "camera");
  }
  best->rmse = ReprojectionRmse(best->pose, correspondences, intrinsics);
  return *best;
}

PnPResult SolveAxialPnP(std::span<const Correspondence> correspondences,
                        const CameraIntrinsics& intrinsics,
                        const SymmetryGroup::Axis& axis,
                        const PnPOptions& options) {
  intrinsics.Validate();
  if (correspondences.size() < 3) {
    throw InvalidArgument("axial PnP needs at least 3 correspondences");
  }
  const Eigen::Vector3d direction = axis.direction.normalized();

  std::vector<double> coordinates;
  double extent = 0.0;
  for (const auto& c : correspondences) {
    const double s = (c.point3 - axis.point).dot(direction);
    coordinates.push_back(s);
    extent = std::max(extent, std::abs(s));
  }
  for (size_t i = 0; i < correspondences.size(); ++i) {
    const Eigen::Vector3d offset = correspondences[i].point3 - axis.point -
                                   coordinates[i] * direction;
    if (offset.norm() > 1e-9 + 1e-6 * extent) {
      throw DegenerateConfiguration("axial PnP point lies off the axis");
    }
  }

  double mean = 0.0;
  for (const double s : coordinates) {
    mean += s;
  }
  mean /= static_cast<double>(coordinates.size());
  double spread = 0.0;
  for (const double s : coordinates) {
    spread += (s - mean) * (s - mean);
  }
  spread = std::sqrt(spread / static_cast<double>(coordinates.size()));
  if (!(spread > 1e-12 * std::max(extent, 1.0))) {
    throw DegenerateConfiguration("axial PnP points share one axis position");
  }

  // Camera-frame axis line L(s) = origin + s * heading, with origin the image
  // of the axis point. Linear solve for M = [sigma*heading, origin + mean*heading]
  // from x ~ M * [s', 1], s' = (s - mean) / sigma.
  const Eigen::Index n = static_cast<Eigen::Index>(correspondences.size());
  Eigen::MatrixXd system(2 * n, 6);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector2d m = Normalize(correspondences[i].point2, intrinsics);
    const Eigen::RowVector2d q((coordinates[i] - mean) / spread, 1.0);
    system.row(2 * i) << q, Eigen::RowVector2d::Zero(), -m.x() * q;
    system.row(2 * i + 1) << Eigen::RowVector2d::Zero(), q, -m.y() * q;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd p = svd.matrixV().col(5);
  Eigen::Matrix<double, 3, 2> line;
  line << p.segment<2>(0).transpose(), p.segment<2>(2).transpose(),
      p.segment<2>(4).transpose();
  const double mu = line.col(0).norm() / spread;
  if (!(mu > 0.0)) {
    throw DegenerateConfiguration("axial PnP linear solve is degenerate");
  }

  struct AxisState {
    Eigen::Vector3d origin;
    Eigen::Vector3d heading;
  };
  int positive = 0;
  AxisState start{(line.col(1) / mu) - mean * line.col(0) / (mu * spread),
                  line.col(0) / (mu * spread)};
  for (const double s : coordinates) {
    positive += (start.origin + s * start.heading).z() > 0.0;
  }
  if (2 * positive < static_cast<int>(coordinates.size())) {
    start.origin = -start.origin;
    start.heading = -start.heading;
  }
  for (const double s : coordinates) {
    if (!((start.origin + s * start.heading).z() > 0.0)) {
      throw DegenerateConfiguration(
          "axial PnP initialization places points behind the camera");
    }
  }

  auto tangents = [](const Eigen::Vector3d& heading) {
    const Eigen::Vector3d helper = std::abs(heading.x()) < 0.9
                                       ? Eigen::Vector3d::UnitX()
                                       : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d first = heading.cross(helper).normalized();
    return std::pair{first, heading.cross(first)};
  };

  auto evaluate = [&](const AxisState& state, Eigen::VectorXd& residuals,
                      Eigen::Matrix<double, Eigen::Dynamic, 5>& jacobian) {
    const auto [first, second] = tangents(state.heading);
    residuals.resize(2 * n);
    jacobian.resize(2 * n, 5);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& c = correspondences[i];
      const double s = coordinates[i];
      const Eigen::Vector3d camera = state.origin + s * state.heading;
      if (!(camera.z() > 0.0)) {
        return false;
      }
      const double sqrt_weight = std::sqrt(c.weight);
      const double inv_z = 1.0 / camera.z();
      const Eigen::Vector2d projected(
          intrinsics.fx * camera.x() * inv_z + intrinsics.cx,
          intrinsics.fy * camera.y() * inv_z + intrinsics.cy);
      residuals.segment<2>(2 * i) = sqrt_weight * (projected - c.point2);
      Eigen::Matrix<double, 2, 3> d_projection;
      d_projection << intrinsics.fx * inv_z, 0.0,
          -intrinsics.fx * camera.x() * inv_z * inv_z, 0.0,
          intrinsics.fy * inv_z, -intrinsics.fy * camera.y() * inv_z * inv_z;
      jacobian.block<2, 3>(2 * i, 0) = sqrt_weight * d_projection;
      jacobian.block<2, 1>(2 * i, 3) = sqrt_weight * s * d_projection * first;
      jacobian.block<2, 1>(2 * i, 4) = sqrt_weight * s * d_projection * second;
    }
    return true;
  };
  auto update = [&](const AxisState& state,
                    const Eigen::Matrix<double, 5, 1>& step) {
    const auto [first, second] = tangents(state.heading);
    return AxisState{
        state.origin + step.head<3>(),
        (state.heading + step(3) * first + step(4) * second).normalized()};
  };

  const auto outcome = Minimize<5, AxisState>(start, evaluate, update, options);
  PnPResult result;
  result.pose.rotation =
      Eigen::Quaterniond::FromTwoVectors(direction, outcome.state.heading)
          .toRotationMatrix();
  result.pose.translation =
      outcome.state.origin - result.pose.rotation * axis.point;
  result.iterations = outcome.iterations;
  result.converged = outcome.converged;
  result.cost_history = outcome.cost_history;
  result.rmse = ReprojectionRmse(result.pose, correspondences, intrinsics);
  return result;
}

void StereoRig::Validate() const {
  left.Validate();
  right.Validate();
  if (!(baseline > 0.0)) {
    throw InvalidArgument("stereo baseline must be positive");
  }
}

Eigen::Vector3d TriangulateStereo(const Eigen::Vector2d& left_keypoint,
                                  const Eigen::Vector2d& right_keypoint,
                                  const StereoRig& rig) {
  rig.Validate();
  const double disparity = (left_keypoint.x() - rig.left.cx) -
                           (right_keypoint.x() - rig.right.cx);
  if (!(disparity > 0.0)) {
    throw DegenerateConfiguration("non-positive stereo disparity " +
                                  std::to_string(disparity));
  }
  const double z = rig.left.fx * rig.baseline / disparity;
  return {(left_keypoint.x() - rig.left.cx) * z / rig.left.fx,
          (left_keypoint.y() - rig.left.cy) * z / rig.left.fy, z};
}

Pose ProcrustesFit(std::span<const Eigen::Vector3d> source,
                   std::span<const Eigen::Vector3d> target) {
  if (source.size() != target.size()) {
    throw InvalidArgument("Procrustes point sets differ in length");
  }
  if (source.size() < 3) {
    throw InvalidArgument("Procrustes needs at least 3 point pairs");
  }
  const PointShape source_shape = AnalyzeShape(source);
  if (IsCollinear(source_shape)) {
    throw DegenerateConfiguration("Procrustes source points are collinear");
  }

  Eigen::Vector3d target_centroid = Eigen::Vector3d::Zero();
  for (const auto& point : target) {
    target_centroid += point;
  }
  target_centroid /= static_cast<double>(target.size());

  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  for (size_t i = 0; i < source.size(); ++i) {
    covariance += (target[i] - target_centroid) *
                  (source[i] - source_shape.centroid).transpose();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      covariance, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d correction = Eigen::Matrix3d::Identity();
  correction(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant();

  Pose pose;
  pose.rotation = svd.matrixU() * correction * svd.matrixV().transpose();
  pose.translation = target_centroid - pose.rotation * source_shape.centroid;
  return pose;
}

}  // namespace kdfnet
