#include "kdfnet/voting.h"

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "kdfnet/error.h"

namespace kdfnet {
namespace {

bool Contains(std::span<const Eigen::Vector2d> points, const Eigen::Vector2d& p,
              double tolerance = 1e-12) {
  for (const auto& q : points) {
    if ((q - p).norm() <= tolerance) {
      return true;
    }
  }
  return false;
}

TEST(IntersectCirclesTest, TwoPoints) {
  const auto hit = IntersectCircles({0, 0}, 5, {8, 0}, 5);
  ASSERT_EQ(hit.kind, CircleIntersection::Kind::kTwo);
  ASSERT_EQ(hit.count, 2);
  EXPECT_TRUE(Contains(hit.solutions(), {4, 3}));
  EXPECT_TRUE(Contains(hit.solutions(), {4, -3}));
  // First solution lies to the left of c1 -> c2 (positive cross product).
  const Eigen::Vector2d first = hit.points[0];
  EXPECT_GT(8.0 * first.y(), 0.0);
}

TEST(IntersectCirclesTest, TangentDisjointNestedCoincident) {
  const auto tangent = IntersectCircles({0, 0}, 1, {2, 0}, 1);
  ASSERT_EQ(tangent.kind, CircleIntersection::Kind::kTangent);
  ASSERT_EQ(tangent.count, 1);
  EXPECT_LT((tangent.points[0] - Eigen::Vector2d(1, 0)).norm(), 1e-12);

  EXPECT_EQ(IntersectCircles({0, 0}, 1, {5, 0}, 1).count, 0);
  EXPECT_EQ(IntersectCircles({0, 0}, 5, {1, 0}, 1).count, 0);
  const auto internal = IntersectCircles({0, 0}, 2, {1, 0}, 1);
  EXPECT_EQ(internal.kind, CircleIntersection::Kind::kTangent);
  const auto same = IntersectCircles({1, 1}, 2, {1, 1}, 2);
  EXPECT_EQ(same.kind, CircleIntersection::Kind::kCoincidentCenters);
  EXPECT_EQ(same.count, 0);
}

TEST(IntersectCirclesTest, SolutionsSatisfyBothCircles) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_real_distribution<double> r(0.5, 80.0);
  int checked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const Eigen::Vector2d c1(u(rng), u(rng));
    const Eigen::Vector2d c2(u(rng), u(rng));
    const double r1 = r(rng);
    const double r2 = r(rng);
    const auto hit = IntersectCircles(c1, r1, c2, r2);
    const double d = (c2 - c1).norm();
    const bool expect_hit = d <= r1 + r2 && d >= std::abs(r1 - r2);
    EXPECT_EQ(hit.count > 0, expect_hit);
    for (const auto& p : hit.solutions()) {
      EXPECT_NEAR((p - c1).norm(), r1, 1e-6);
      EXPECT_NEAR((p - c2).norm(), r2, 1e-6);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(SelectValidHypothesisTest, ThirdCircleDisambiguates) {
  const std::vector<Eigen::Vector2d> two = {{4, 3}, {4, -3}};
  EXPECT_EQ(SelectValidHypothesis(two, {4, 8}, 5), Eigen::Vector2d(4, 3));
  EXPECT_EQ(SelectValidHypothesis(two, {4, -8}, 5), Eigen::Vector2d(4, -3));
  const std::vector<Eigen::Vector2d> one = {{1, 0}};
  EXPECT_EQ(SelectValidHypothesis(one, {9, 9}, 1), Eigen::Vector2d(1, 0));
  // Equidistant: first candidate wins.
  EXPECT_EQ(SelectValidHypothesis(two, {0, 0}, 5), Eigen::Vector2d(4, 3));
  EXPECT_THROW(SelectValidHypothesis({}, {0, 0}, 1), InvalidArgument);
}

VoterSet PerfectVoters(const Eigen::Vector2d& keypoint,
                       const std::vector<Eigen::Vector2d>& pixels) {
  VoterSet voters;
  for (const auto& p : pixels) {
    voters.Add(p, (p - keypoint).norm());
  }
  return voters;
}

std::vector<Eigen::Vector2d> RandomPixels(std::mt19937_64& rng, int count,
                                          double low, double high) {
  std::uniform_int_distribution<int> u(static_cast<int>(low),
                                       static_cast<int>(high));
  std::vector<Eigen::Vector2d> pixels;
  for (int i = 0; i < count; ++i) {
    pixels.emplace_back(u(rng), u(rng));
  }
  return pixels;
}

TEST(GenerateHypothesesTest, PerfectVotersHitKeypoint) {
  std::mt19937_64 rng(8);
  const Eigen::Vector2d keypoint(31.3, 17.9);
  const VoterSet voters = PerfectVoters(keypoint, RandomPixels(rng, 200, 0, 63));
  VotingConfig config;
  config.num_triples = 100;
  const auto hypotheses = GenerateHypotheses(voters, config);
  EXPECT_GT(hypotheses.size(), 250u);
  EXPECT_LE(hypotheses.size(), 300u);
  for (const auto& h : hypotheses) {
    EXPECT_LT((h - keypoint).norm(), 1e-6);
  }
}

TEST(GenerateHypothesesTest, CollinearCheckVoterIsSkipped) {
  // Three-row strip: many triples lie on one row, where the mirror of the
  // keypoint across that row is equally consistent with the check voter.
  std::vector<Eigen::Vector2d> strip;
  for (int v = 0; v < 3; ++v) {
    for (int u = 0; u < 60; ++u) {
      strip.emplace_back(u, v);
    }
  }
  const Eigen::Vector2d keypoint(101.4, 1.3);
  VotingConfig config;
  config.num_triples = 500;
  const auto hypotheses = GenerateHypotheses(PerfectVoters(keypoint, strip), config);
  EXPECT_FALSE(hypotheses.empty());
  for (const auto& h : hypotheses) {
    EXPECT_LT((h - keypoint).norm(), 1e-6);
  }

  std::vector<Eigen::Vector2d> row;
  for (int u = 0; u < 10; ++u) {
    row.emplace_back(u, 4);
  }
  EXPECT_TRUE(GenerateHypotheses(PerfectVoters(keypoint, row), config).empty());
}

TEST(GenerateHypothesesTest, BudgetAndDeterminism) {
  std::mt19937_64 rng(12);
  const VoterSet voters = PerfectVoters({5, 5}, RandomPixels(rng, 30, 0, 20));
  VotingConfig config;
  config.num_triples = 1;
  EXPECT_LE(GenerateHypotheses(voters, config).size(), 3u);
  config.num_triples = 64;
  config.rng_seed = 99;
  EXPECT_EQ(GenerateHypotheses(voters, config), GenerateHypotheses(voters, config));
  VoterSet two;
  two.Add({0, 0}, 1);
  two.Add({1, 0}, 1);
  EXPECT_THROW(GenerateHypotheses(two, config), InsufficientVoters);
}

// Direct transcription of the score definition.
int OracleScore(const Eigen::Vector2d& h, const std::vector<Eigen::Vector2d>& p,
                const std::vector<double>& d, double theta) {
  int count = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double residual =
        std::sqrt((h.x() - p[i].x()) * (h.x() - p[i].x()) +
                  (h.y() - p[i].y()) * (h.y() - p[i].y())) -
        d[i];
    if (std::abs(residual) < theta) {
      ++count;
    }
  }
  return count;
}

TEST(VoteScoreTest, MatchesOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  std::uniform_int_distribution<int> n_voters(1, 64);
  std::uniform_int_distribution<int> n_hyp(1, 10);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Eigen::Vector2d> pixels;
    std::vector<double> distances;
    VoterSet voters;
    const int count = n_voters(rng);
    for (int i = 0; i < count; ++i) {
      pixels.emplace_back(std::floor(u(rng)), std::floor(u(rng)));
      distances.push_back(u(rng));
      voters.Add(pixels.back(), distances.back());
    }
    std::vector<Eigen::Vector2d> hypotheses;
    for (int j = n_hyp(rng); j > 0; --j) {
      hypotheses.emplace_back(u(rng), u(rng));
    }
    const double theta = 0.1 + u(rng) / 10.0;
    const auto scores = ScoreHypotheses(hypotheses, voters, theta);
    for (size_t j = 0; j < hypotheses.size(); ++j) {
      EXPECT_EQ(scores[j], OracleScore(hypotheses[j], pixels, distances, theta));
      EXPECT_EQ(VoteScore(hypotheses[j], voters, theta), scores[j]);
    }
  }
}

TEST(VoteScoreTest, ExtremesAndMonotoneInTheta) {
  std::mt19937_64 rng(4);
  const Eigen::Vector2d keypoint(10, 10);
  const VoterSet voters = PerfectVoters(keypoint, RandomPixels(rng, 50, 0, 20));
  EXPECT_EQ(VoteScore(keypoint, voters, 0.4), 50);
  EXPECT_EQ(VoteScore({1e6, 1e6}, voters, 0.4), 0);
  int previous = 50;
  for (const double theta : {1.6, 0.8, 0.4, 0.2, 0.1}) {
    const int score = VoteScore({12.5, 9.0}, voters, theta);
    EXPECT_LE(score, previous);
    previous = score;
  }
}

TEST(VoterSetTest, RejectsBadDistances) {
  VoterSet voters;
  EXPECT_THROW(voters.Add({0, 0}, -1.0), InvalidArgument);
  EXPECT_THROW(voters.Add({0, 0}, std::nan("")), InvalidArgument);
  EXPECT_TRUE(voters.empty());
}

TEST(VotingConfigTest, Validation) {
  VotingConfig config;
  EXPECT_EQ(config.num_hypotheses(), 3072);
  EXPECT_EQ(VotingConfig::TriplesForHypotheses(48), 16);
  EXPECT_EQ(VotingConfig::TriplesForHypotheses(49), 17);
  config.inlier_threshold = 0.0;
  EXPECT_THROW(config.Validate(), InvalidArgument);
}

TEST(SampleVoterPixelsTest, WithoutReplacementAndSmallRegions) {
  std::vector<Eigen::Vector2i> region;
  for (int i = 0; i < 100; ++i) {
    region.emplace_back(i % 10, i / 10);
  }
  const auto sample = SampleVoterPixels(region, 40, 7);
  ASSERT_EQ(sample.size(), 40u);
  std::set<std::pair<int, int>> unique;
  for (const auto& p : sample) {
    unique.insert({p.x(), p.y()});
  }
  EXPECT_EQ(unique.size(), 40u);
  EXPECT_EQ(SampleVoterPixels(region, 40, 7), sample);
  EXPECT_EQ(SampleVoterPixels(region, 500, 7), region);
}

TEST(VoteKeypointTest, NoiselessFieldIsExactInsideAndOutsideImage) {
  const int h = 64;
  const int w = 64;
  for (const Eigen::Vector2d keypoint :
       {Eigen::Vector2d(20.4, 33.7), Eigen::Vector2d(-15.2, 80.9),
        Eigen::Vector2d(120.0, -40.0)}) {
    const DistanceField field = BuildKdf(keypoint, h, w, 2);
    const auto region = [](int u, int v) { return u > 30 && v > 20 && v < 40; };
    VotingConfig config;
    config.num_triples = 64;
    const Hypothesis result = VoteKeypoint(field, region, config);
    EXPECT_LT((result.location - keypoint).norm(), 0.5);
    EXPECT_TRUE(result.reliable);
  }
}

TEST(VoteKeypointTest, ExactFromAnyNonCollinearSubset) {
  const Eigen::Vector2d keypoint(7.3, 9.1);
  const DistanceField field = BuildKdf(keypoint, 32, 32);
  const std::vector<Eigen::Vector2i> three = {{25, 3}, {30, 28}, {12, 30}};
  VotingConfig config;
  config.num_triples = 4;
  EXPECT_LT((VoteKeypoint(field, three, config).location - keypoint).norm(),
            0.5);
}

TEST(VoteKeypointTest, DeterministicAndErrors) {
  std::mt19937_64 rng(3);
  DistanceField field = BuildKdf({30, 30}, 64, 64);
  std::normal_distribution<float> noise(0.0f, 0.5f);
  for (float& value : field.values()) {
    value = std::abs(value + noise(rng));
  }
  const auto region = [](int u, int v) { return (u + v) % 3 == 0; };
  VotingConfig config;
  config.num_triples = 128;
  config.rng_seed = 5;
  const Hypothesis a = VoteKeypoint(field, region, config);
  const Hypothesis b = VoteKeypoint(field, region, config);
  EXPECT_EQ(a.location, b.location);
  EXPECT_EQ(a.score, b.score);
  const std::vector<Eigen::Vector2i> two = {{0, 0}, {1, 1}};
  EXPECT_THROW(VoteKeypoint(field, two, config), InsufficientVoters);
}

}  // namespace
}  // namespace kdfnet
