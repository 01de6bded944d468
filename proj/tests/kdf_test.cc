#include "kdfnet/kdf.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

TEST(BuildKdfTest, SmallExamples) {
  EXPECT_EQ(BuildKdf({0, 0}, 8, 8).at(3, 4), 5.0f);
  EXPECT_EQ(BuildKdf({5, 7}, 10, 10).at(5, 7), 0.0f);
  EXPECT_EQ(BuildKdf({-10, 0}, 4, 4).at(0, 0), 10.0f);
}

TEST(BuildKdfTest, MatchesPointwiseRecomputation) {
  const Eigen::Vector2d keypoint(37.25, -12.5);
  const DistanceField field = BuildKdf(keypoint, 40, 60, 3);
  EXPECT_EQ(field.keypoint_index(), 3);
  ASSERT_EQ(field.size(), 40u * 60u);
  for (int v = 0; v < 40; ++v) {
    for (int u = 0; u < 60; ++u) {
      const double expected = std::hypot(u - keypoint.x(), v - keypoint.y());
      EXPECT_NEAR(field.at(u, v), expected, 1e-5 * std::max(1.0, expected));
      EXPECT_EQ(field.values()[static_cast<size_t>(v) * 60 + u], field.at(u, v));
    }
  }
}

TEST(BuildKdfTest, RejectsEmptyGrid) {
  EXPECT_THROW(BuildKdf({0, 0}, 0, 5), InvalidArgument);
}

TEST(LogParamTest, Examples) {
  EXPECT_EQ(ToLogParam(16.0, 16.0), 0.0);
  EXPECT_NEAR(ToLogParam(16.0 * std::exp(1.0), 16.0), 1.0, 1e-15);
  EXPECT_EQ(ToLogParam(0.0, 16.0), std::log(0.5 / 16.0));
  EXPECT_EQ(ToLogParam(0.25, 16.0), std::log(0.5 / 16.0));
  EXPECT_THROW(ToLogParam(-1.0, 16.0), InvalidArgument);
  EXPECT_THROW(ToLogParam(std::nan(""), 16.0), InvalidArgument);
  for (const double d : {0.5, 1.0, 3.7, 100.0, 361.0}) {
    EXPECT_NEAR(FromLogParam(ToLogParam(d, 16.0), 16.0), d, 1e-9 * d);
  }
}

TEST(LogParamTest, DefaultScale) {
  EXPECT_EQ(DefaultLogScale(256, 256), 16.0);
  EXPECT_NEAR(DefaultLogScale(480, 640), std::sqrt(0.5 * 800.0), 1e-12);
}

TEST(SmoothL1Test, Branches) {
  EXPECT_EQ(SmoothL1(0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(SmoothL1(0.5, 1.0), 0.125);
  EXPECT_DOUBLE_EQ(SmoothL1(1.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(SmoothL1(-2.0, 1.0), 1.5);
  EXPECT_NEAR(SmoothL1(1.0 - 1e-9, 1.0), SmoothL1(1.0 + 1e-9, 1.0), 1e-8);
  EXPECT_DOUBLE_EQ(SmoothL1(0.6, 2.0), 0.36 / 4.0);
}

// Scales a field so that log(pred / gt) is a constant `d` everywhere.
DistanceField ShiftLog(const DistanceField& gt, double d) {
  DistanceField out = gt;
  for (float& value : out.values()) {
    value = static_cast<float>(std::max<double>(value, 0.5) * std::exp(d));
  }
  return out;
}

TEST(KdfLossTest, UniformResiduals) {
  LossConfig config;
  config.crop_radius.reset();
  // Keypoint off the grid keeps every shifted value above the clamp floor.
  const DistanceField gt = BuildKdf({-20.3, -11.7}, 32, 32);
  EXPECT_EQ(KdfLoss(gt, gt, config), 0.0);
  EXPECT_NEAR(KdfLoss(ShiftLog(gt, 1.0), gt, config), 0.5, 1e-6);
  EXPECT_NEAR(KdfLoss(ShiftLog(gt, -2.0), gt, config), 1.5, 1e-6);
}

TEST(KdfLossTest, SymmetricInArguments) {
  std::mt19937_64 rng(2);
  std::normal_distribution<float> noise(0.0f, 2.0f);
  const DistanceField gt = BuildKdf({10, 10}, 24, 24);
  DistanceField pred = gt;
  for (float& value : pred.values()) {
    value = std::abs(value + noise(rng));
  }
  const LossConfig config;
  EXPECT_NEAR(KdfLoss(pred, gt, config), KdfLoss(gt, pred, config), 1e-12);
}

TEST(KdfLossTest, CropUsesGroundTruthSupport) {
  LossConfig config;
  config.crop_radius = 3.0;
  const DistanceField gt = BuildKdf({0, 0}, 16, 16);
  DistanceField pred = gt;
  // Corrupt only outside the crop support.
  pred.at(10, 10) = 1000.0f;
  EXPECT_EQ(KdfLoss(pred, gt, config), 0.0);
  pred.at(1, 1) = 1000.0f;
  // Support: pixels with distance <= 3 from the corner.
  int support = 0;
  for (int v = 0; v < 16; ++v) {
    for (int u = 0; u < 16; ++u) {
      support += std::hypot(u, v) <= 3.0 ? 1 : 0;
    }
  }
  const double d = std::log(1000.0 / std::sqrt(2.0));
  EXPECT_NEAR(KdfLoss(pred, gt, config), (std::abs(d) - 0.5) / support, 1e-6);
}

TEST(KdfLossTest, Errors) {
  const LossConfig config;
  EXPECT_THROW(KdfLoss(BuildKdf({0, 0}, 4, 4), BuildKdf({0, 0}, 4, 5), config),
               InvalidArgument);
  LossConfig tiny;
  tiny.crop_radius = 0.1;
  EXPECT_THROW(KdfLoss(BuildKdf({-50, -50}, 4, 4), BuildKdf({-50, -50}, 4, 4),
                       tiny),
               InvalidArgument);
  LossConfig bad;
  bad.e = 0.0;
  EXPECT_THROW(bad.Validate(), InvalidArgument);
}

TEST(SymmetricKdfLossTest, IdentityGroupIsPlainSum) {
  const LossConfig config;
  const std::vector<DistanceField> gts = {BuildKdf({3, 4}, 16, 16, 0),
                                          BuildKdf({12, 9}, 16, 16, 1)};
  const std::vector<DistanceField> preds = {ShiftLog(gts[0], 0.3),
                                            ShiftLog(gts[1], -0.7)};
  const double sum = KdfLoss(preds[0], gts[0], config) +
                     KdfLoss(preds[1], gts[1], config);
  EXPECT_DOUBLE_EQ(SymmetricKdfLoss(preds, gts, SymmetryGroup(2), config), sum);
}

TEST(SymmetricKdfLossTest, SwapGroupTakesMinimum) {
  const LossConfig config;
  const std::vector<DistanceField> gts = {BuildKdf({3, 4}, 16, 16, 0),
                                          BuildKdf({12, 9}, 16, 16, 1)};
  const SymmetryGroup swap({{1, 0}});
  // Predictions equal to the swapped ground truth.
  const std::vector<DistanceField> swapped = {gts[1], gts[0]};
  EXPECT_EQ(SymmetricKdfLoss(swapped, gts, swap, config), 0.0);

  const std::vector<DistanceField> preds = {ShiftLog(gts[0], 0.2),
                                            ShiftLog(gts[1], 0.1)};
  const double identity = KdfLoss(preds[0], gts[0], config) +
                          KdfLoss(preds[1], gts[1], config);
  const double crossed = KdfLoss(preds[0], gts[1], config) +
                         KdfLoss(preds[1], gts[0], config);
  EXPECT_DOUBLE_EQ(SymmetricKdfLoss(preds, gts, swap, config),
                   std::min(identity, crossed));
  EXPECT_LE(SymmetricKdfLoss(preds, gts, swap, config), identity);
}

TEST(SymmetricKdfLossTest, RejectsOutOfRangePermutation) {
  const LossConfig config;
  const std::vector<DistanceField> one = {BuildKdf({3, 4}, 8, 8)};
  EXPECT_THROW(SymmetricKdfLoss(one, one, SymmetryGroup({{1, 0}}), config),
               InvalidArgument);
}

}  // namespace
}  // namespace kdfnet
