#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "kdfnet/kdf.h"

namespace kdfnet {

// Voting pixels with their predicted keypoint distances, stored as parallel
// arrays so the scorer streams through contiguous memory.
class VoterSet {
 public:
  VoterSet() = default;

  void Reserve(size_t count);
  // Throws InvalidArgument for a negative or non-finite distance.
  void Add(const Eigen::Vector2d& pixel, double distance);

  size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }

  Eigen::Vector2d pixel(size_t i) const { return {xs_[i], ys_[i]}; }
  double distance(size_t i) const { return distances_[i]; }

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::span<const double> distances() const { return distances_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> distances_;
};

struct Hypothesis {
  Eigen::Vector2d location = Eigen::Vector2d::Zero();
  int score = 0;
  // False when voting produced no hypothesis and `location` is a fallback.
  bool reliable = true;
};

struct VotingConfig {
  int num_voters = 4096;
  // N; distance voting draws N triples and emits up to 3N hypotheses.
  int num_triples = 1024;
  // theta, in pixels.
  double inlier_threshold = 0.4;
  std::uint64_t rng_seed = 0;
  // Direction baseline: a voter supports a hypothesis when the cosine between
  // its predicted direction and the direction to the hypothesis exceeds this.
  double direction_cos_threshold = 0.99;

  void Validate() const;

  int num_hypotheses() const { return 3 * num_triples; }
  // Triples needed for a hypothesis budget (rounded up to a multiple of 3).
  static int TriplesForHypotheses(int num_hypotheses);
};

// Pixel membership test over (u = column, v = row).
using PixelRegion = std::function<bool(int u, int v)>;

// Row-major scan of the pixels of an height x width grid accepted by `region`.
std::vector<Eigen::Vector2i> CollectRegionPixels(int height, int width,
                                                 const PixelRegion& region);

struct CircleIntersection {
  enum class Kind { kNone, kTangent, kTwo, kCoincidentCenters };

  Kind kind = Kind::kNone;
  std::array<Eigen::Vector2d, 2> points;
  int count = 0;

  std::span<const Eigen::Vector2d> solutions() const {
    return {points.data(), static_cast<size_t>(count)};
  }
};

// Slack on the squared half-chord below which two circles count as tangent.
inline constexpr double kTangencyTolerance = 1e-9;

// Closed-form intersection of two circles. Coincident centers yield
// kCoincidentCenters with no points. For two solutions the first lies on the
// left of the c1 -> c2 direction.
CircleIntersection IntersectCircles(const Eigen::Vector2d& c1, double r1,
                                    const Eigen::Vector2d& c2, double r2);

// The candidate whose distance to c3 best matches r3. Ties go to the earlier
// candidate. Throws InvalidArgument when `candidates` is empty.
Eigen::Vector2d SelectValidHypothesis(
    std::span<const Eigen::Vector2d> candidates, const Eigen::Vector2d& c3,
    double r3);

// Draws config.num_triples voter triples (distinct within a triple) from an
// RNG seeded by config.rng_seed and emits, per triple, up to three
// hypotheses: pair (1,2) checked against 3, pair (2,3) against 1, pair (3,1)
// against 2. Pairs without an intersection are skipped, as are two-point
// intersections whose check voter is collinear with the pair.
std::vector<Eigen::Vector2d> GenerateHypotheses(const VoterSet& voters,
                                                const VotingConfig& config);

// Number of voters p with | ||h - p|| - D_p | < theta.
int VoteScore(const Eigen::Vector2d& hypothesis, const VoterSet& voters,
              double theta);

// VoteScore for every hypothesis.
std::vector<int> ScoreHypotheses(std::span<const Eigen::Vector2d> hypotheses,
                                 const VoterSet& voters, double theta);

// Highest-scoring hypothesis (lowest index on ties). The RNG is seeded with
// config.rng_seed as given.
Hypothesis VoteFromVoters(const VoterSet& voters, const VotingConfig& config);

// Picks up to num_voters region pixels, without replacement, using `rng_seed`.
// When the region is smaller, every pixel is kept in scan order.
std::vector<Eigen::Vector2i> SampleVoterPixels(
    std::span<const Eigen::Vector2i> region_pixels, int num_voters,
    std::uint64_t rng_seed);

// Distance-based keypoint voting on one field. The stream for this keypoint is
// seeded with config.rng_seed ^ field.keypoint_index(). Throws
// InsufficientVoters when the region holds fewer than 3 pixels.
Hypothesis VoteKeypoint(const DistanceField& field,
                        std::span<const Eigen::Vector2i> region_pixels,
                        const VotingConfig& config);
Hypothesis VoteKeypoint(const DistanceField& field, const PixelRegion& region,
                        const VotingConfig& config);

}  // namespace kdfnet
