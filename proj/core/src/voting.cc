#include "kdfnet/voting.h"

#include <cmath>
#include <numeric>
#include <string>

#include "kdfnet/error.h"
#include "kdfnet/random.h"

namespace kdfnet {
namespace {

double Cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

void VoterSet::Reserve(size_t count) {
  xs_.reserve(count);
  ys_.reserve(count);
  distances_.reserve(count);
}

void VoterSet::Add(const Eigen::Vector2d& pixel, double distance) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw InvalidArgument("voter distance must be finite and non-negative");
  }
  xs_.push_back(pixel.x());
  ys_.push_back(pixel.y());
  distances_.push_back(distance);
}

void VotingConfig::Validate() const {
  if (num_voters < 3) {
    throw InvalidArgument("num_voters must be at least 3");
  }
  if (num_triples < 1) {
    throw InvalidArgument("num_triples must be at least 1");
  }
  if (!(inlier_threshold > 0.0)) {
    throw InvalidArgument("inlier threshold must be positive");
  }
  if (!(direction_cos_threshold > -1.0 && direction_cos_threshold < 1.0)) {
    throw InvalidArgument("direction cosine threshold must lie in (-1, 1)");
  }
}

int VotingConfig::TriplesForHypotheses(int num_hypotheses) {
  if (num_hypotheses < 1) {
    throw InvalidArgument("hypothesis count must be at least 1");
  }
  return (num_hypotheses + 2) / 3;
}

std::vector<Eigen::Vector2i> CollectRegionPixels(int height, int width,
                                                 const PixelRegion& region) {
  std::vector<Eigen::Vector2i> pixels;
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      if (region(u, v)) {
        pixels.emplace_back(u, v);
      }
    }
  }
  return pixels;
}

CircleIntersection IntersectCircles(const Eigen::Vector2d& c1, double r1,
                                    const Eigen::Vector2d& c2, double r2) {
  CircleIntersection result;
  const Eigen::Vector2d delta = c2 - c1;
  const double d2 = delta.squaredNorm();
  if (d2 == 0.0) {
    result.kind = CircleIntersection::Kind::kCoincidentCenters;
    return result;
  }
  const double d = std::sqrt(d2);

  // Foot of the common chord along c1 -> c2, and the squared half-chord.
  const double a = (r1 * r1 - r2 * r2 + d2) / (2.0 * d);
  const double h2 = r1 * r1 - a * a;
  if (h2 < -kTangencyTolerance) {
    result.kind = CircleIntersection::Kind::kNone;
    return result;
  }

  const Eigen::Vector2d axis = delta / d;
  const Eigen::Vector2d foot = c1 + a * axis;
  if (h2 <= kTangencyTolerance) {
    result.kind = CircleIntersection::Kind::kTangent;
    result.points[0] = foot;
    result.count = 1;
    return result;
  }

  const double h = std::sqrt(h2);
  const Eigen::Vector2d normal(-axis.y(), axis.x());
  result.kind = CircleIntersection::Kind::kTwo;
  result.points[0] = foot + h * normal;
  result.points[1] = foot - h * normal;
  result.count = 2;
  return result;
}

Eigen::Vector2d SelectValidHypothesis(
    std::span<const Eigen::Vector2d> candidates, const Eigen::Vector2d& c3,
    double r3) {
  if (candidates.empty()) {
    throw InvalidArgument("no hypothesis candidates to select from");
  }
  size_t best = 0;
  double best_residual = std::abs((candidates[0] - c3).norm() - r3);
  for (size_t i = 1; i < candidates.size(); ++i) {
    const double residual = std::abs((candidates[i] - c3).norm() - r3);
    if (residual < best_residual) {
      best_residual = residual;
      best = i;
    }
  }
  return candidates[best];
}

std::vector<Eigen::Vector2d> GenerateHypotheses(const VoterSet& voters,
                                                const VotingConfig& config) {
  config.Validate();
  const size_t count = voters.size();
  if (count < 3) {
    throw InsufficientVoters("distance voting needs at least 3 voters, got " +
                             std::to_string(count));
  }

  Rng rng = MakeRng(config.rng_seed);
  std::uniform_int_distribution<size_t> pick(0, count - 1);

  std::vector<Eigen::Vector2d> hypotheses;
  hypotheses.reserve(static_cast<size_t>(config.num_hypotheses()));
  for (int n = 0; n < config.num_triples; ++n) {
    std::array<size_t, 3> triple;
    triple[0] = pick(rng);
    do {
      triple[1] = pick(rng);
    } while (triple[1] == triple[0]);
    do {
      triple[2] = pick(rng);
    } while (triple[2] == triple[0] || triple[2] == triple[1]);

    for (int j = 0; j < 3; ++j) {
      const size_t a = triple[j];
      const size_t b = triple[(j + 1) % 3];
      const size_t c = triple[(j + 2) % 3];
      const CircleIntersection meet =
          IntersectCircles(voters.pixel(a), voters.distance(a),
                           voters.pixel(b), voters.distance(b));
      if (meet.count == 0) {
        continue;
      }
      // A third voter on the line through the pair sees both intersections
      // at the same distance and cannot tell them apart.
      if (meet.count == 2 &&
          Cross(voters.pixel(b) - voters.pixel(a),
                voters.pixel(c) - voters.pixel(a)) == 0.0) {
        continue;
      }
      hypotheses.push_back(SelectValidHypothesis(
          meet.solutions(), voters.pixel(c), voters.distance(c)));
    }
  }
  return hypotheses;
}

int VoteScore(const Eigen::Vector2d& hypothesis, const VoterSet& voters,
              double theta) {
  const auto xs = voters.xs();
  const auto ys = voters.ys();
  const auto distances = voters.distances();
  const double hx = hypothesis.x();
  const double hy = hypothesis.y();
  int score = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double dx = hx - xs[i];
    const double dy = hy - ys[i];
    score += std::abs(std::sqrt(dx * dx + dy * dy) - distances[i]) < theta;
  }
  return score;
}

std::vector<int> ScoreHypotheses(std::span<const Eigen::Vector2d> hypotheses,
                                 const VoterSet& voters, double theta) {
  std::vector<int> scores;
  scores.reserve(hypotheses.size());
  for (const auto& hypothesis : hypotheses) {
    scores.push_back(VoteScore(hypothesis, voters, theta));
  }
  return scores;
}

Hypothesis VoteFromVoters(const VoterSet& voters, const VotingConfig& config) {
  const auto hypotheses = GenerateHypotheses(voters, config);
  if (hypotheses.empty()) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (size_t i = 0; i < voters.size(); ++i) {
      centroid += voters.pixel(i);
    }
    return {centroid / static_cast<double>(voters.size()), 0, false};
  }

  const auto scores =
      ScoreHypotheses(hypotheses, voters, config.inlier_threshold);
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) {
      best = i;
    }
  }
  return {hypotheses[best], scores[best], true};
}

std::vector<Eigen::Vector2i> SampleVoterPixels(
    std::span<const Eigen::Vector2i> region_pixels, int num_voters,
    std::uint64_t rng_seed) {
  std::vector<Eigen::Vector2i> pixels(region_pixels.begin(),
                                      region_pixels.end());
  const size_t wanted = static_cast<size_t>(std::max(num_voters, 0));
  if (pixels.size() <= wanted) {
    return pixels;
  }
  // Partial Fisher-Yates: the first `wanted` slots become the sample.
  Rng rng = MakeRng(rng_seed);
  for (size_t i = 0; i < wanted; ++i) {
    std::uniform_int_distribution<size_t> pick(i, pixels.size() - 1);
    std::swap(pixels[i], pixels[pick(rng)]);
  }
  pixels.resize(wanted);
  return pixels;
}

Hypothesis VoteKeypoint(const DistanceField& field,
                        std::span<const Eigen::Vector2i> region_pixels,
                        const VotingConfig& config) {
  config.Validate();
  if (region_pixels.size() < 3) {
    throw InsufficientVoters("voter region holds " +
                             std::to_string(region_pixels.size()) +
                             " pixels; distance voting needs 3");
  }

  VotingConfig keypoint_config = config;
  keypoint_config.rng_seed =
      config.rng_seed ^ static_cast<std::uint64_t>(field.keypoint_index());

  // Voter sampling and triple sampling use separate streams so that changing
  // num_triples leaves the voter set untouched.
  const auto sampled = SampleVoterPixels(region_pixels, config.num_voters,
                                         MixSeed(keypoint_config.rng_seed));
  VoterSet voters;
  voters.Reserve(sampled.size());
  for (const auto& pixel : sampled) {
    if (pixel.x() < 0 || pixel.y() < 0 || pixel.x() >= field.width() ||
        pixel.y() >= field.height()) {
      throw InvalidArgument("voter pixel lies outside the field");
    }
    voters.Add(pixel.cast<double>(), field.at(pixel.x(), pixel.y()));
  }
  return VoteFromVoters(voters, keypoint_config);
}

Hypothesis VoteKeypoint(const DistanceField& field, const PixelRegion& region,
                        const VotingConfig& config) {
  const auto pixels =
      CollectRegionPixels(field.height(), field.width(), region);
  return VoteKeypoint(field, pixels, config);
}

}  // namespace kdfnet
