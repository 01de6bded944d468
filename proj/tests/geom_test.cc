#include "kdfnet/geom.h"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

Eigen::Matrix3d RandomRotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

TEST(PoseTest, ComposeAndInverse) {
  std::mt19937_64 rng(3);
  const Pose a(RandomRotation(rng), {0.1, -0.2, 0.3});
  const Pose b(RandomRotation(rng), {-0.4, 0.5, 0.6});
  const Eigen::Vector3d x(0.7, -0.8, 0.9);
  EXPECT_LT(((a * b).Apply(x) - a.Apply(b.Apply(x))).norm(), 1e-12);
  EXPECT_LT((a.Inverse().Apply(a.Apply(x)) - x).norm(), 1e-12);
}

TEST(PoseTest, ApproximateRotationIsRepaired) {
  Eigen::Matrix3d noisy = Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitY())
                              .toRotationMatrix();
  noisy(0, 1) += 1e-4;
  const Pose pose = Pose::FromApproximateRotation(noisy, Eigen::Vector3d::Zero());
  EXPECT_LT((pose.rotation.transpose() * pose.rotation -
             Eigen::Matrix3d::Identity()).norm(), 1e-12);
  EXPECT_NEAR(pose.rotation.determinant(), 1.0, 1e-12);
}

TEST(RotationDistanceTest, MatchesAngleAxis) {
  for (const double angle : {0.0, 1e-7, 0.5, 2.0, std::numbers::pi}) {
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(angle, Eigen::Vector3d(1, 2, 3).normalized())
            .toRotationMatrix();
    EXPECT_NEAR(RotationAngularDistance(Eigen::Matrix3d::Identity(), r), angle,
                1e-9);
  }
}

TEST(IntrinsicsTest, RejectsBadValues) {
  CameraIntrinsics k;
  EXPECT_NO_THROW(k.Validate());
  k.fx = 0.0;
  EXPECT_THROW(k.Validate(), InvalidArgument);
  k = {};
  k.width = 0;
  EXPECT_THROW(k.Validate(), InvalidArgument);
}

TEST(ProjectTest, PinholeAndBehindCamera) {
  const CameraIntrinsics k;
  const Eigen::Vector2d p =
      Project({0.1, -0.05, 0.0}, Pose(Eigen::Matrix3d::Identity(), {0.0, 0.0, 0.5}), k);
  EXPECT_NEAR(p.x(), 128.0 + 500.0 * 0.1 / 0.5, 1e-12);
  EXPECT_NEAR(p.y(), 128.0 - 500.0 * 0.05 / 0.5, 1e-12);
  EXPECT_THROW(Project({0, 0, 0}, Pose::Identity(), k), BehindCamera);
  EXPECT_THROW(ProjectCameraPoint({0, 0, -1}, k), BehindCamera);
}

TEST(SymmetryGroupTest, InsertsIdentityAndValidates) {
  SymmetryGroup swap({{1, 0}});
  ASSERT_EQ(swap.permutations().size(), 2u);
  EXPECT_EQ(swap.permutations()[0], (std::vector<int>{0, 1}));
  EXPECT_TRUE(swap.IsNonTrivial());
  EXPECT_FALSE(SymmetryGroup(3).IsNonTrivial());
  EXPECT_THROW(SymmetryGroup({{0, 0}}), InvalidArgument);
  EXPECT_THROW(SymmetryGroup({{0, 1}, {0, 1, 2}}), InvalidArgument);
  SymmetryGroup axial({{}}, SymmetryGroup::Axis{{0, 0, 0}, {0, 0, 2}});
  EXPECT_TRUE(axial.IsNonTrivial());
  EXPECT_NEAR(axial.axis()->direction.norm(), 1.0, 1e-15);
}

TEST(ObjectModelTest, DiameterMatchesPairScan) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::Vector3d> points;
  for (int i = 0; i < 50; ++i) {
    points.emplace_back(u(rng), u(rng), u(rng));
  }
  double expected = 0.0;
  for (const auto& a : points) {
    for (const auto& b : points) {
      expected = std::max(expected, (a - b).norm());
    }
  }
  EXPECT_EQ(ComputeDiameter(points), expected);
  const std::vector<Eigen::Vector3d> keypoints(points.begin(), points.begin() + 4);
  const ObjectModel model = ObjectModel::Create(points, keypoints, SymmetryGroup(4));
  EXPECT_EQ(model.diameter, expected);
}

TEST(ObjectModelTest, RejectsInvalidModels) {
  const std::vector<Eigen::Vector3d> cube = {
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  EXPECT_THROW(ObjectModel::Create({}, cube, SymmetryGroup(4)), InvalidArgument);
  EXPECT_THROW(ObjectModel::Create(cube, {cube[0], cube[1], cube[2]},
                                   SymmetryGroup(3)),
               InvalidArgument);
  EXPECT_THROW(ObjectModel::Create(cube, {cube[0], cube[1], cube[2], {2, 0, 0}},
                                   SymmetryGroup(4)),
               InvalidArgument);
}

// Independent greedy FPS written directly from the definition.
std::vector<int> NaiveFps(const std::vector<Eigen::Vector3d>& points, int count,
                          int first) {
  std::vector<int> chosen = {first};
  while (static_cast<int>(chosen.size()) < count) {
    int best = -1;
    double best_distance = -1.0;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const int c : chosen) {
        nearest = std::min(nearest, (points[i] - points[c]).norm());
      }
      if (nearest > best_distance) {
        best_distance = nearest;
        best = i;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

TEST(FpsTest, MatchesNaiveGreedy) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Eigen::Vector3d> points;
    for (int i = 0; i < 200; ++i) {
      points.emplace_back(u(rng), u(rng), u(rng));
    }
    EXPECT_EQ(FarthestPointSampleIndices(points, 8, 17), NaiveFps(points, 8, 17));
  }
}

TEST(FpsTest, DefaultSeedIsFarthestFromCentroid) {
  const std::vector<Eigen::Vector3d> points = {
      {0, 0, 0}, {1, 0, 0}, {-3, 0, 0}, {0, 1, 0}};
  const auto indices = FarthestPointSampleIndices(points, 2);
  EXPECT_EQ(indices[0], 2);
  EXPECT_EQ(indices[1], 1);
}

TEST(FpsTest, SpreadBeatsRandomSubsets) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::Vector3d> points;
  for (int i = 0; i < 300; ++i) {
    points.emplace_back(u(rng), u(rng), u(rng));
  }
  auto min_pair = [](const std::vector<Eigen::Vector3d>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < set.size(); ++i) {
      for (size_t j = i + 1; j < set.size(); ++j) {
        best = std::min(best, (set[i] - set[j]).norm());
      }
    }
    return best;
  };
  const double fps = min_pair(FarthestPointSample(points, 8));
  int beaten = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Eigen::Vector3d> subset;
    std::sample(points.begin(), points.end(), std::back_inserter(subset), 8, rng);
    beaten += min_pair(subset) > fps ? 1 : 0;
  }
  EXPECT_EQ(beaten, 0);
}

TEST(FpsTest, RejectsBadCounts) {
  const std::vector<Eigen::Vector3d> points = {{0, 0, 0}, {1, 0, 0}};
  EXPECT_THROW(FarthestPointSample(points, 3), InvalidArgument);
  EXPECT_THROW(FarthestPointSample({}, 1), InvalidArgument);
  EXPECT_EQ(FarthestPointSample(points, 2).size(), 2u);
}

}  // namespace
}  // namespace kdfnet
