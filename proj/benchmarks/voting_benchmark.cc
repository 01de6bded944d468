#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "kdfnet/direction_voting.h"
#include "kdfnet/pose.h"
#include "kdfnet/geom.h"
#include "kdfnet/kdf.h"
#include "kdfnet/random.h"
#include "kdfnet/synth.h"
#include "kdfnet/voting.h"

namespace {

using namespace kdfnet;

std::vector<Eigen::Vector2i> SquareRegion(int count) {
  const int side = static_cast<int>(std::ceil(std::sqrt(count)));
  std::vector<Eigen::Vector2i> region;
  for (int i = 0; i < count; ++i) {
    region.emplace_back(96 + i % side, 96 + i / side);
  }
  return region;
}

DistanceField NoisyField(double sigma_t) {
  NoiseModel noise;
  noise.sigma_t = sigma_t;
  Rng rng = MakeRng(1);
  return CorruptField(BuildKdf({150.3, 110.7}, 256, 256), noise, 16.0, rng);
}

void BM_VoteKeypoint(benchmark::State& state) {
  const DistanceField field = NoisyField(0.05);
  const auto region = SquareRegion(static_cast<int>(state.range(0)));
  VotingConfig config;
  config.num_voters = static_cast<int>(state.range(0));
  config.num_triples = VotingConfig::TriplesForHypotheses(
      static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(VoteKeypoint(field, region, config));
  }
}
BENCHMARK(BM_VoteKeypoint)
    ->Args({4096, 192})
    ->Args({4096, 768})
    ->Args({4096, 3072})
    ->Unit(benchmark::kMillisecond);

void BM_ScoreHypotheses(benchmark::State& state) {
  const DistanceField field = NoisyField(0.05);
  VoterSet voters;
  for (const auto& p : SquareRegion(static_cast<int>(state.range(0)))) {
    voters.Add(p.cast<double>(), field.at(p.x(), p.y()));
  }
  VotingConfig config;
  config.num_triples = VotingConfig::TriplesForHypotheses(
      static_cast<int>(state.range(1)));
  const auto hypotheses = GenerateHypotheses(voters, config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreHypotheses(hypotheses, voters, 0.4));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(hypotheses.size() * voters.size()));
}
BENCHMARK(BM_ScoreHypotheses)
    ->Args({4096, 192})
    ->Args({4096, 384})
    ->Unit(benchmark::kMillisecond);

void BM_DirectionVoteKeypoint(benchmark::State& state) {
  const DirectionField field = BuildDirectionField({150.3, 110.7}, 256, 256);
  const auto region = SquareRegion(4096);
  VotingConfig config;
  config.num_triples = VotingConfig::TriplesForHypotheses(
      static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(DirectionVoteKeypoint(field, region, config));
  }
}
BENCHMARK(BM_DirectionVoteKeypoint)->Arg(192)->Unit(benchmark::kMillisecond);

void BM_IntersectCircles(benchmark::State& state) {
  const Eigen::Vector2d c1(0, 0);
  const Eigen::Vector2d c2(8, 1);
  double r = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(IntersectCircles(c1, r, c2, 5.0));
    r += 1e-12;
  }
}
BENCHMARK(BM_IntersectCircles);

void BM_SolvePnP(benchmark::State& state) {
  Rng rng = MakeRng(3);
  const CameraIntrinsics intrinsics;
  const Pose truth(SampleUniformRotation(rng), {0.01, 0.02, 0.6});
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  std::vector<Correspondence> correspondences;
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector3d x(u(rng), u(rng), u(rng));
    correspondences.push_back({x, Project(x, truth, intrinsics), 1.0});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolvePnP(correspondences, intrinsics));
  }
}
BENCHMARK(BM_SolvePnP)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
