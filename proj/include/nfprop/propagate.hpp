#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nfprop/counts.hpp"
#include "nfprop/graph.hpp"
#include "nfprop/metrics.hpp"

namespace nfprop {

struct SeedSet {
  std::vector<NodeId> ids;
  std::uint64_t rng_seed = 0;
};

/// s distinct nodes drawn uniformly without replacement, in draw order.
/// Deterministic in rng_seed; a smaller s draws a prefix of a larger one.
SeedSet sample_seeds(const Graph& g, std::size_t s, std::uint64_t rng_seed);

/// All seeds diffuse together over an n x s signature matrix, one
/// synchronous double-buffered round per hop. `threads` <= 0 picks the
/// default worker count; the result does not depend on it.
CollisionCounts propagate_p(const Graph& g, const SeedSet& seeds, Direction dir = Direction::kPullOut,
                            int threads = 0);

/// One seed at a time over an n-bit graph signature; seeds run as
/// independent tasks. Same counts as propagate_p.
CollisionCounts propagate_s(const Graph& g, const SeedSet& seeds, Direction dir = Direction::kPullOut,
                            int threads = 0);

/// propagate_s with every node as a seed: exact pair counts.
CollisionCounts propagate_exact(const Graph& g, Direction dir = Direction::kPullOut, int threads = 0);

struct ProgressiveStep {
  std::size_t seeds = 0;
  DistanceMetrics metrics;
};

struct ProgressiveResult {
  CollisionCounts counts;  // of the last evaluated prefix
  std::size_t used = 0;
  std::vector<ProgressiveStep> steps;
  bool converged = false;  // the stopping rule fired (possibly on the last step)
};

/// Draws max(schedule) seeds once and evaluates growing prefixes. Stops at
/// step k > 1 once average distance, effective diameter and connectivity rate
/// all move by a relative amount below stop_rel against step k - 1.
ProgressiveResult propagate_progressive(const Graph& g, std::span<const std::size_t> schedule,
                                        double stop_rel, std::uint64_t rng_seed,
                                        Direction dir = Direction::kPullOut, double tau = kDefaultTau,
                                        int threads = 0);

/// Caps schedule entries at n: entries past the first one >= n collapse into n.
std::vector<std::size_t> clamp_schedule(std::span<const std::size_t> schedule, std::size_t n);

/// Relative change used by the progressive stopping rule; infinite when
/// exactly one side is undefined or old is zero and new is not.
double relative_change(std::optional<double> old_value, std::optional<double> new_value);

}  // namespace nfprop
