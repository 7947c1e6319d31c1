#pragma once

#include <cstdint>
#include <vector>

#include "nfprop/counts.hpp"
#include "nfprop/graph.hpp"
#include "nfprop/propagate.hpp"

namespace nfprop {

/// Ground truth from one BFS per source.
struct ExactNeighborhoodFunction {
  /// counts_by_hop[r - 1] = |{(u, v) : u != v, d(u, v) <= r}|
  std::vector<std::uint64_t> counts_by_hop;
  std::uint32_t diameter = 0;
  /// Nodes reachable from each source, source excluded.
  std::vector<std::uint64_t> per_source_ball_sizes;
};

/// Entry r - 1 counts nodes at distance exactly r from `source`. kPullOut
/// follows stored arcs (the source's out-ball); kPullIn follows them reversed.
std::vector<std::uint64_t> bfs_ball_profile(const Graph& g, NodeId source,
                                            Direction dir = Direction::kPullOut);

ExactNeighborhoodFunction exact_nf(const Graph& g, Direction dir = Direction::kPullOut, int threads = 0);

/// BFS from every seed, aggregated like a propagation run. Equal to
/// propagate_s(g, seeds, opposite(dir)).
CollisionCounts rand_bfs_estimate(const Graph& g, const SeedSet& seeds,
                                  Direction dir = Direction::kPullOut);

}  // namespace nfprop
