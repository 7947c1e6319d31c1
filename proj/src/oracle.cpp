#include "nfprop/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "nfprop/parallel.hpp"

namespace nfprop {

namespace {

void bfs_profile(const Graph& work, NodeId source, std::vector<std::uint32_t>& dist,
                 std::vector<NodeId>& queue, std::vector<std::uint64_t>& out) {
  constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  out.clear();
  std::fill(dist.begin(), dist.end(), kUnseen);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId v : work.neighbors(u)) {
      if (dist[v] != kUnseen) continue;
      dist[v] = dist[u] + 1;
      if (dist[v] > out.size()) out.push_back(0);
      ++out[dist[v] - 1];
      queue.push_back(v);
    }
  }
}

const Graph& oriented(const Graph& g, Direction dir, Graph& scratch) {
  if (dir == Direction::kPullOut || !g.directed()) return g;
  scratch = transpose(g);
  return scratch;
}

}  // namespace

std::vector<std::uint64_t> bfs_ball_profile(const Graph& g, NodeId source, Direction dir) {
  if (source >= g.num_nodes()) throw std::out_of_range("source id out of range");
  Graph scratch;
  const Graph& work = oriented(g, dir, scratch);
  std::vector<std::uint32_t> dist(g.num_nodes());
  std::vector<NodeId> queue;
  std::vector<std::uint64_t> out;
  bfs_profile(work, source, dist, queue, out);
  return out;
}

ExactNeighborhoodFunction exact_nf(const Graph& g, Direction dir, int threads) {
  Graph scratch;
  const Graph& work = oriented(g, dir, scratch);
  const auto n = static_cast<std::int64_t>(g.num_nodes());

  ExactNeighborhoodFunction result;
  result.per_source_ball_sizes.assign(g.num_nodes(), 0);
  std::vector<std::uint64_t> exact_hops;

#pragma omp parallel num_threads(resolve_threads(threads))
  {
    std::vector<std::uint32_t> dist(g.num_nodes());
    std::vector<NodeId> queue;
    std::vector<std::uint64_t> profile;
    std::vector<std::uint64_t> local;
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      bfs_profile(work, static_cast<NodeId>(i), dist, queue, profile);
      if (profile.size() > local.size()) local.resize(profile.size(), 0);
      std::uint64_t ball = 0;
      for (std::size_t h = 0; h < profile.size(); ++h) {
        local[h] += profile[h];
        ball += profile[h];
      }
      result.per_source_ball_sizes[static_cast<std::size_t>(i)] = ball;
    }
#pragma omp critical(nfprop_merge_bfs)
    {
      if (local.size() > exact_hops.size()) exact_hops.resize(local.size(), 0);
      for (std::size_t h = 0; h < local.size(); ++h) exact_hops[h] += local[h];
    }
  }

  result.diameter = static_cast<std::uint32_t>(exact_hops.size());
  result.counts_by_hop.resize(exact_hops.size());
  std::uint64_t run = 0;
  for (std::size_t h = 0; h < exact_hops.size(); ++h) result.counts_by_hop[h] = run += exact_hops[h];
  return result;
}

CollisionCounts rand_bfs_estimate(const Graph& g, const SeedSet& seeds, Direction dir) {
  if (seeds.ids.empty()) throw std::invalid_argument("seed set is empty");
  Graph scratch;
  const Graph& work = oriented(g, dir, scratch);
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<std::uint32_t> dist(g.num_nodes());
  std::vector<NodeId> queue;
  std::vector<std::uint64_t> profile;

  CollisionCounts out;
  out.s = seeds.ids.size();
  out.n = g.num_nodes();
  for (NodeId x : seeds.ids) {
    if (x >= g.num_nodes()) throw std::out_of_range("seed id out of range");
    if (seen[x]) throw std::invalid_argument("duplicate seed");
    seen[x] = true;
    bfs_profile(work, x, dist, queue, profile);
    if (profile.size() > out.count_all.size()) out.count_all.resize(profile.size(), 0);
    for (std::size_t h = 0; h < profile.size(); ++h) out.count_all[h] += profile[h];
    for (NodeId u : queue) out.edge_scans += work.neighbors(u).size();
  }
  return out;
}

}  // namespace nfprop
