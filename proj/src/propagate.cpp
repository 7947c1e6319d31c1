#include "nfprop/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "nfprop/bitsig.hpp"
#include "nfprop/parallel.hpp"

namespace nfprop {

SeedSet sample_seeds(const Graph& g, std::size_t s, std::uint64_t rng_seed) {
  const std::size_t n = g.num_nodes();
  if (s == 0 || s > n) throw std::invalid_argument("seed count must lie in [1, n]");
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  std::mt19937_64 rng(rng_seed);
  for (std::size_t i = 0; i < s; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(s);
  return {std::move(pool), rng_seed};
}

namespace {

// Pull-out walks the stored arcs; pull-in walks the transpose. Undirected
// graphs are their own transpose.
const Graph& oriented(const Graph& g, Direction dir, Graph& scratch) {
  if (dir == Direction::kPullOut || !g.directed()) return g;
  scratch = transpose(g);
  return scratch;
}

void require_seeds(const Graph& g, const SeedSet& seeds) {
  if (seeds.ids.empty()) throw std::invalid_argument("seed set is empty");
  std::vector<bool> seen(g.num_nodes(), false);
  for (NodeId u : seeds.ids) {
    if (u >= g.num_nodes()) throw std::out_of_range("seed id out of range");
    if (seen[u]) throw std::invalid_argument("duplicate seed");
    seen[u] = true;
  }
}

}  // namespace

CollisionCounts propagate_p(const Graph& g, const SeedSet& seeds, Direction dir, int threads) {
  require_seeds(g, seeds);
  Graph scratch;
  const Graph& work = oriented(g, dir, scratch);
  const auto n = static_cast<std::int64_t>(g.num_nodes());
  const int workers = resolve_threads(threads);

  SignatureMatrix cur = init_signatures(g.num_nodes(), seeds.ids);
  SignatureMatrix next = cur;

  CollisionCounts out;
  out.s = seeds.ids.size();
  out.n = g.num_nodes();

  for (;;) {
    std::uint64_t flips = 0;
    std::uint64_t scans = 0;
    // Reads touch only `cur`; each u writes only its own row of `next`.
#pragma omp parallel for num_threads(workers) schedule(dynamic, 256) reduction(+ : flips, scans)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto u = static_cast<NodeId>(i);
      next.copy_row(u, cur);
      if (cur.saturated(u)) continue;
      auto nbrs = work.neighbors(u);
      scans += nbrs.size();
      for (NodeId v : nbrs) flips += next.merge_row(u, cur.row(v));
    }
    out.edge_scans += scans;
    if (flips == 0) break;
    out.count_all.push_back(flips);
    std::swap(cur, next);
  }
  return out;
}

namespace {

// Diffuses a single seed, adding per-hop flips into `hops`.
void diffuse_one(const Graph& work, NodeId seed, GraphSignature& cur, GraphSignature& next,
                 std::vector<std::uint64_t>& hops, std::uint64_t& scans) {
  const std::size_t n = work.num_nodes();
  cur.clear();
  next.clear();
  cur.set(seed);
  next.set(seed);
  for (std::size_t hop = 0;; ++hop) {
    std::uint64_t flips = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (cur.test(u)) continue;
      for (NodeId v : work.neighbors(static_cast<NodeId>(u))) {
        ++scans;
        if (cur.test(v)) {
          next.set(u);
          ++flips;
          break;
        }
      }
    }
    if (flips == 0) return;
    if (hop >= hops.size()) hops.resize(hop + 1, 0);
    hops[hop] += flips;
    cur.merge(next);
  }
}

}  // namespace

CollisionCounts propagate_s(const Graph& g, const SeedSet& seeds, Direction dir, int threads) {
  require_seeds(g, seeds);
  Graph scratch;
  const Graph& work = oriented(g, dir, scratch);
  const int workers = resolve_threads(threads);
  const auto s = static_cast<std::int64_t>(seeds.ids.size());

  CollisionCounts out;
  out.s = seeds.ids.size();
  out.n = g.num_nodes();

#pragma omp parallel num_threads(workers)
  {
    GraphSignature cur(g.num_nodes());
    GraphSignature next(g.num_nodes());
    std::vector<std::uint64_t> hops;
    std::uint64_t scans = 0;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t i = 0; i < s; ++i) diffuse_one(work, seeds.ids[i], cur, next, hops, scans);
#pragma omp critical(nfprop_merge_hops)
    {
      if (hops.size() > out.count_all.size()) out.count_all.resize(hops.size(), 0);
      for (std::size_t h = 0; h < hops.size(); ++h) out.count_all[h] += hops[h];
      out.edge_scans += scans;
    }
  }
  return out;
}

CollisionCounts propagate_exact(const Graph& g, Direction dir, int threads) {
  if (g.num_nodes() == 0) return {};
  SeedSet all;
  all.ids.resize(g.num_nodes());
  std::iota(all.ids.begin(), all.ids.end(), NodeId{0});
  return propagate_s(g, all, dir, threads);
}

std::vector<std::size_t> clamp_schedule(std::span<const std::size_t> schedule, std::size_t n) {
  std::vector<std::size_t> out;
  if (n == 0) return out;
  for (std::size_t v : schedule) {
    out.push_back(std::min(v, n));
    if (v >= n) break;
  }
  return out;
}

double relative_change(std::optional<double> old_value, std::optional<double> new_value) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!old_value && !new_value) return 0.0;
  if (!old_value || !new_value) return kInf;
  if (*old_value == *new_value) return 0.0;
  if (*old_value == 0.0) return kInf;
  return std::abs(*new_value - *old_value) / std::abs(*old_value);
}

ProgressiveResult propagate_progressive(const Graph& g, std::span<const std::size_t> schedule,
                                        double stop_rel, std::uint64_t rng_seed, Direction dir,
                                        double tau, int threads) {
  if (schedule.empty()) throw std::invalid_argument("schedule is empty");
  if (schedule.front() == 0) throw std::invalid_argument("schedule entries must be positive");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1]) throw std::invalid_argument("schedule must be strictly increasing");
  if (schedule.back() > g.num_nodes()) throw std::invalid_argument("schedule exceeds node count");
  if (!(stop_rel > 0.0 && stop_rel < 1.0)) throw std::invalid_argument("stop_rel must lie in (0, 1)");

  const SeedSet drawn = sample_seeds(g, schedule.back(), rng_seed);

  ProgressiveResult result;
  std::size_t prev = 0;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    SeedSet delta{{drawn.ids.begin() + static_cast<std::ptrdiff_t>(prev),
                   drawn.ids.begin() + static_cast<std::ptrdiff_t>(schedule[k])},
                  rng_seed};
    result.counts += propagate_s(g, delta, dir, threads);
    prev = schedule[k];

    ProgressiveStep step{prev, metrics_from_counts(result.counts, tau, {"progressive", 0, 0, rng_seed})};
    result.steps.push_back(std::move(step));
    result.used = prev;

    if (k == 0) continue;
    const auto& before = result.steps[k - 1].metrics;
    const auto& after = result.steps[k].metrics;
    auto eff = [](const DistanceMetrics& m) -> std::optional<double> {
      if (!m.effective_diameter) return std::nullopt;
      return static_cast<double>(*m.effective_diameter);
    };
    if (relative_change(before.avg_distance, after.avg_distance) < stop_rel &&
        relative_change(eff(before), eff(after)) < stop_rel &&
        relative_change(before.connectivity_rate, after.connectivity_rate) < stop_rel) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace nfprop
