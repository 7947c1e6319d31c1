#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nfprop {

enum class Direction {
  kPullOut,  // a node pulls from its out-neighbors: collects each seed's in-ball
  kPullIn,   // a node pulls from its in-neighbors: collects each seed's out-ball
};

constexpr Direction opposite(Direction d) noexcept {
  return d == Direction::kPullOut ? Direction::kPullIn : Direction::kPullOut;
}

/// Raw output of a diffusion: per-hop counts of new (node, seed) collisions.
/// count_all[r - 1] holds hop r; hop 0 (a seed meeting itself) is never counted.
/// Every stored entry is positive.
struct CollisionCounts {
  std::vector<std::uint64_t> count_all;
  std::uint64_t s = 0;
  std::uint64_t n = 0;
  std::uint64_t edge_scans = 0;  // adjacency entries visited

  std::uint32_t max_hop() const noexcept { return static_cast<std::uint32_t>(count_all.size()); }

  /// cumulative()[r - 1] = collisions at hop <= r.
  std::vector<std::uint64_t> cumulative() const;

  /// Collisions over all hops: ordered (node, seed) pairs with node != seed reachable.
  std::uint64_t total() const noexcept;

  /// Adds counts of a disjoint seed set over the same graph.
  CollisionCounts& operator+=(const CollisionCounts& other);

  /// Compares the counts payload; edge_scans is instrumentation and ignored.
  friend bool operator==(const CollisionCounts& a, const CollisionCounts& b) noexcept {
    return a.count_all == b.count_all && a.s == b.s && a.n == b.n;
  }
};

}  // namespace nfprop
