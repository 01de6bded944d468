#include <filesystem>

#include <gtest/gtest.h>

#include "kdfnet/error.h"
#include "kdfnet/object_model_io.h"
#include "kdfnet/scene_io.h"
#include "kdfnet/synth.h"

namespace kdfnet {
namespace {

std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(ObjectModelIoTest, RoundTrip) {
  const ObjectModel model = ObjectModel::Create(
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}},
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      SymmetryGroup({{1, 0, 2, 3}}, SymmetryGroup::Axis{{0, 0, 0}, {0, 1, 0}}));
  const auto path = TempDir("kdf_model") / "model.json";
  std::filesystem::create_directories(path.parent_path());
  WriteObjectModel(path, model);
  const ObjectModel back = ReadObjectModel(path);
  EXPECT_EQ(back.points, model.points);
  EXPECT_EQ(back.keypoints, model.keypoints);
  EXPECT_EQ(back.diameter, model.diameter);
  EXPECT_EQ(back.symmetry.permutations(), model.symmetry.permutations());
  ASSERT_TRUE(back.symmetry.axis().has_value());
  EXPECT_EQ(back.symmetry.axis()->direction, Eigen::Vector3d(0, 1, 0));
  EXPECT_THROW(ReadObjectModel("/nonexistent/model.json"), IoError);
}

TEST(ObjectModelIoTest, RecomputesMissingDiameter) {
  nlohmann::json doc = {
      {"points", {0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 1}},
      {"keypoints", {0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 1}}};
  EXPECT_DOUBLE_EQ(ObjectModelFromJson(doc).diameter, std::sqrt(5.0));
  doc["points"] = {0, 0};
  EXPECT_THROW(ObjectModelFromJson(doc), InvalidArgument);
}

TEST(PoseIoTest, RoundTrip) {
  Rng rng = MakeRng(2);
  const Pose pose(SampleUniformRotation(rng), {0.1, 0.2, 0.3});
  const Pose back = PoseFromJson(PoseToJson(pose));
  EXPECT_LT((back.rotation - pose.rotation).norm(), 1e-12);
  EXPECT_EQ(back.translation, pose.translation);
}

TEST(MaskRleTest, RoundTripAndLeadingUnsetRun) {
  Mask mask(3, 3);
  mask.set(0, 0, true);
  mask.set(2, 2, true);
  const auto doc = EncodeMaskRle(mask);
  EXPECT_EQ(doc["counts"], nlohmann::json({0, 1, 7, 1}));
  EXPECT_EQ(DecodeMaskRle(doc), mask);
  nlohmann::json bad = doc;
  bad["counts"] = {0, 1, 2};
  EXPECT_THROW(DecodeMaskRle(bad), InvalidArgument);
}

TEST(SceneIoTest, RoundTrip) {
  SceneConfig config;
  Rng rng = MakeRng(12);
  const SceneSample scene = MakeStickScene(config, rng);
  const auto dir = TempDir("kdf_scene");
  WriteScene(dir, scene, 42);
  EXPECT_TRUE(std::filesystem::exists(dir / "scene_000042.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "scene_000042_kp3.kdf"));
  const SceneSample back = ReadScene(dir, 42);
  EXPECT_EQ(back.mask, scene.mask);
  EXPECT_EQ(back.keypoints2d, scene.keypoints2d);
  EXPECT_EQ(back.gt_fields, scene.gt_fields);
  EXPECT_EQ(back.projected_length, scene.projected_length);
  EXPECT_LT((back.pose.rotation - scene.pose.rotation).norm(), 1e-12);
  EXPECT_THROW(ReadScene(dir, 7), IoError);
}

}  // namespace
}  // namespace kdfnet
