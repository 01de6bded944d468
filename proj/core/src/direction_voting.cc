#include "kdfnet/direction_voting.h"

#include <cmath>
#include <string>

#include "kdfnet/error.h"
#include "kdfnet/random.h"

namespace kdfnet {
namespace {

double Cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

struct DirectionVoters {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> dxs;
  std::vector<double> dys;

  size_t size() const { return xs.size(); }
  Eigen::Vector2d pixel(size_t i) const { return {xs[i], ys[i]}; }
  Eigen::Vector2d direction(size_t i) const { return {dxs[i], dys[i]}; }
};

int DirectionScore(const Eigen::Vector2d& hypothesis,
                   const DirectionVoters& voters, double cos_threshold) {
  int score = 0;
  for (size_t i = 0; i < voters.size(); ++i) {
    const double ox = hypothesis.x() - voters.xs[i];
    const double oy = hypothesis.y() - voters.ys[i];
    const double dot = ox * voters.dxs[i] + oy * voters.dys[i];
    score += dot > cos_threshold * std::sqrt(ox * ox + oy * oy);
  }
  return score;
}

}  // namespace

DirectionField::DirectionField(int height, int width, int keypoint_index)
    : height_(height),
      width_(width),
      keypoint_index_(keypoint_index),
      values_(static_cast<size_t>(height) * width, Eigen::Vector2d::Zero()) {
  if (height < 1 || width < 1) {
    throw InvalidArgument("direction field must be at least 1x1");
  }
}

DirectionField BuildDirectionField(const Eigen::Vector2d& keypoint, int height,
                                   int width, int keypoint_index) {
  DirectionField field(height, width, keypoint_index);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const Eigen::Vector2d offset = keypoint - Eigen::Vector2d(u, v);
      const double norm = offset.norm();
      field.at(u, v) =
          norm > 0.0 ? Eigen::Vector2d(offset / norm) : Eigen::Vector2d::Zero();
    }
  }
  return field;
}

Hypothesis DirectionVoteKeypoint(const DirectionField& field,
                                 std::span<const Eigen::Vector2i> region_pixels,
                                 const VotingConfig& config) {
  config.Validate();
  if (region_pixels.size() < 2) {
    throw InsufficientVoters("voter region holds " +
                             std::to_string(region_pixels.size()) +
                             " pixels; direction voting needs 2");
  }

  const std::uint64_t seed =
      config.rng_seed ^ static_cast<std::uint64_t>(field.keypoint_index());
  const auto sampled =
      SampleVoterPixels(region_pixels, config.num_voters, MixSeed(seed));

  DirectionVoters voters;
  for (const auto& pixel : sampled) {
    if (pixel.x() < 0 || pixel.y() < 0 || pixel.x() >= field.width() ||
        pixel.y() >= field.height()) {
      throw InvalidArgument("voter pixel lies outside the field");
    }
    const Eigen::Vector2d& direction = field.at(pixel.x(), pixel.y());
    voters.xs.push_back(pixel.x());
    voters.ys.push_back(pixel.y());
    voters.dxs.push_back(direction.x());
    voters.dys.push_back(direction.y());
  }

  Rng rng = MakeRng(seed);
  std::uniform_int_distribution<size_t> pick(0, voters.size() - 1);
  std::vector<Eigen::Vector2d> hypotheses;
  const int budget = config.num_hypotheses();
  hypotheses.reserve(static_cast<size_t>(budget));
  for (int n = 0; n < budget; ++n) {
    const size_t a = pick(rng);
    size_t b = pick(rng);
    while (b == a) {
      b = pick(rng);
    }
    // Solve p_a + s * d_a = p_b + t * d_b for s.
    const Eigen::Vector2d da = voters.direction(a);
    const Eigen::Vector2d db = voters.direction(b);
    const double sine = Cross(da, db);
    if (std::abs(sine) < kMinRaySine) {
      continue;
    }
    const double s = Cross(voters.pixel(b) - voters.pixel(a), db) / sine;
    hypotheses.push_back(voters.pixel(a) + s * da);
  }

  if (hypotheses.empty()) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (size_t i = 0; i < voters.size(); ++i) {
      centroid += voters.pixel(i);
    }
    return {centroid / static_cast<double>(voters.size()), 0, false};
  }

  Hypothesis best{hypotheses[0], -1, true};
  for (const auto& hypothesis : hypotheses) {
    const int score =
        DirectionScore(hypothesis, voters, config.direction_cos_threshold);
    if (score > best.score) {
      best.location = hypothesis;
      best.score = score;
    }
  }
  return best;
}

Hypothesis DirectionVoteKeypoint(const DirectionField& field,
                                 const PixelRegion& region,
                                 const VotingConfig& config) {
  const auto pixels =
      CollectRegionPixels(field.height(), field.width(), region);
  return DirectionVoteKeypoint(field, pixels, config);
}

}  // namespace kdfnet
