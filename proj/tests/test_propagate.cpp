#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "nfprop/metrics.hpp"
#include "nfprop/propagate.hpp"
#include "test_support.hpp"

using namespace nfprop;
using Hops = std::vector<std::uint64_t>;

namespace {

SeedSet seeds_of(std::vector<NodeId> ids) { return {std::move(ids), 0}; }

}  // namespace

TEST_CASE("sample_seeds") {
  Graph five = Graph::from_arcs(5, {}, false);
  for (std::uint64_t r : {0u, 1u, 99u}) {
    auto s = sample_seeds(five, 5, r);
    auto sorted = s.ids;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<NodeId>{0, 1, 2, 3, 4});
  }
  Graph one = Graph::from_arcs(1, {}, false);
  CHECK(sample_seeds(one, 1, 3).ids == std::vector<NodeId>{0});

  Graph hundred = Graph::from_arcs(100, {}, false);
  auto a = sample_seeds(hundred, 10, 42);
  auto b = sample_seeds(hundred, 10, 42);
  CHECK(a.ids == b.ids);
  CHECK(a.rng_seed == 42);
  CHECK(std::set<NodeId>(a.ids.begin(), a.ids.end()).size() == 10);

  auto longer = sample_seeds(hundred, 40, 42);
  CHECK(std::equal(a.ids.begin(), a.ids.end(), longer.ids.begin()));

  CHECK_THROWS_AS(sample_seeds(five, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_seeds(five, 6, 1), std::invalid_argument);
}

TEST_CASE("sample_seeds is roughly uniform") {
  Graph g = Graph::from_arcs(10, {}, false);
  std::vector<int> hits(10, 0);
  for (std::uint64_t r = 0; r < 5000; ++r)
    for (NodeId u : sample_seeds(g, 3, r).ids) ++hits[u];
  // Each node expected 1500 times; 5 sigma is about 160.
  for (int h : hits) CHECK(std::abs(h - 1500) < 160);
}

TEST_CASE("P3 with seed 0") {
  Graph g = testing::path3();
  for (auto c : {propagate_p(g, seeds_of({0})), propagate_s(g, seeds_of({0}))}) {
    CHECK(c.count_all == Hops{1, 1});
    CHECK(c.max_hop() == 2);
    CHECK(c.s == 1);
    CHECK(c.n == 3);
  }
}

TEST_CASE("isolated seed produces no collisions") {
  std::vector<std::pair<NodeId, NodeId>> arcs{{0, 1}};
  Graph g = Graph::from_arcs(3, arcs, false);
  CHECK(propagate_p(g, seeds_of({2})).count_all.empty());
  CHECK(propagate_s(g, seeds_of({2})).max_hop() == 0);
}

TEST_CASE("star center reaches all leaves at hop 1") {
  Graph g = testing::star3();
  CHECK(propagate_p(g, seeds_of({0})).count_all == Hops{3});
  CHECK(propagate_s(g, seeds_of({0})).count_all == Hops{3});
}

TEST_CASE("directed 3-cycle, pull-out collects the seed's in-ball") {
  Graph g = testing::directed_cycle3();
  CHECK(propagate_s(g, seeds_of({0}), Direction::kPullOut).count_all == Hops{1, 1});
  CHECK(propagate_p(g, seeds_of({0}), Direction::kPullOut).count_all == Hops{1, 1});
  // A seed with an empty in-ball.
  std::vector<std::pair<NodeId, NodeId>> arcs{{0, 1}};
  Graph source_only = Graph::from_arcs(2, arcs, true);
  CHECK(propagate_s(source_only, seeds_of({0})).count_all.empty());
  CHECK(propagate_s(source_only, seeds_of({1})).count_all == Hops{1});
}

TEST_CASE("exact counts on fixtures") {
  CHECK(propagate_exact(testing::path3()).cumulative() == Hops{4, 6});
  CHECK(propagate_exact(testing::path3()).max_hop() == 2);
  CHECK(propagate_exact(testing::directed_cycle3()).cumulative() == Hops{3, 6});
  CHECK(propagate_exact(testing::star3()).cumulative() == Hops{6, 12});
  Graph edgeless = Graph::from_arcs(5, {}, true);
  auto e = propagate_exact(edgeless);
  CHECK(e.count_all.empty());
  CHECK(e.max_hop() == 0);
  CHECK(e.s == 5);
  CHECK(propagate_exact(Graph::from_arcs(0, {}, true)).s == 0);
}

TEST_CASE("invalid seed sets are rejected") {
  Graph g = testing::path3();
  CHECK_THROWS_AS(propagate_p(g, seeds_of({})), std::invalid_argument);
  CHECK_THROWS_AS(propagate_s(g, seeds_of({})), std::invalid_argument);
  CHECK_THROWS_AS(propagate_p(g, seeds_of({3})), std::out_of_range);
  CHECK_THROWS_AS(propagate_s(g, seeds_of({1, 1})), std::invalid_argument);
}

TEST_CASE("engines agree with each other and with brute force on random graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const bool directed = trial % 2 == 0;
    const double p = std::uniform_real_distribution<double>(0.0, 0.15)(rng);
    Graph g = testing::erdos_renyi(n, p, directed, rng());
    const std::size_t s = 1 + rng() % n;
    SeedSet seeds = sample_seeds(g, s, rng());
    const auto dist = testing::relaxation_distances(g);

    auto cp = propagate_p(g, seeds, Direction::kPullOut);
    auto cs = propagate_s(g, seeds, Direction::kPullOut);
    CHECK(cp == cs);
    CHECK(cp.count_all == testing::brute_pull_out_counts(dist, seeds.ids));

    // Pull-in on g is pull-out on the transpose.
    auto in_p = propagate_p(g, seeds, Direction::kPullIn);
    CHECK(in_p == propagate_s(g, seeds, Direction::kPullIn));
    CHECK(in_p == propagate_p(transpose(g), seeds, Direction::kPullOut));
    if (!directed) CHECK(in_p == cp);

    for (std::uint64_t c : cp.count_all) CHECK(c > 0);
    if (cp.max_hop() > 0) CHECK(cp.cumulative().back() <= s * (n - 1));

    // Work bounds.
    CHECK(cp.edge_scans <= (cp.max_hop() + 1ULL) * g.num_arcs());
    CHECK(cs.edge_scans <= s * (cs.max_hop() + 1ULL) * g.num_arcs());
  }
}

TEST_CASE("seed order, thread count and additivity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + rng() % 80;
    Graph g = testing::erdos_renyi(n, 0.05, trial % 2 == 0, rng());
    SeedSet seeds = sample_seeds(g, std::min<std::size_t>(n, 2 + rng() % 30), rng());

    auto reference = propagate_p(g, seeds, Direction::kPullOut, 1);
    SeedSet shuffled = seeds;
    std::shuffle(shuffled.ids.begin(), shuffled.ids.end(), rng);
    CHECK(propagate_p(g, shuffled) == reference);
    CHECK(propagate_s(g, shuffled) == reference);
    for (int threads : {2, 3, 8}) {
      CHECK(propagate_p(g, seeds, Direction::kPullOut, threads) == reference);
      CHECK(propagate_s(g, seeds, Direction::kPullOut, threads) == reference);
    }

    const std::size_t split = seeds.ids.size() / 2;
    if (split == 0) continue;
    SeedSet a{{seeds.ids.begin(), seeds.ids.begin() + split}, 0};
    SeedSet b{{seeds.ids.begin() + split, seeds.ids.end()}, 0};
    CollisionCounts sum = propagate_p(g, a);
    sum += propagate_s(g, b);
    CHECK(sum == reference);
  }
}

TEST_CASE("exact mode matches brute force on random graphs up to n = 200") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 50 + rng() % 151;
    const bool directed = trial % 2 == 1;
    Graph g = testing::erdos_renyi(n, 3.0 / static_cast<double>(n), directed, rng());
    auto c = propagate_exact(g);
    CHECK(c.cumulative() == testing::brute_cumulative(testing::relaxation_distances(g)));
    CHECK(c.s == n);
  }
}

TEST_CASE("single-seed estimates average to the exact reachable-pair count") {
  Graph g = testing::erdos_renyi(40, 0.04, true, 8);
  const auto exact = propagate_exact(g).total();
  double sum = 0.0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    auto c = propagate_s(g, seeds_of({u}));
    sum += static_cast<double>(g.num_nodes()) * static_cast<double>(c.total());
  }
  CHECK(sum / static_cast<double>(g.num_nodes()) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-12));
}

TEST_CASE("clamp_schedule and relative_change") {
  std::vector<std::size_t> sched{16, 64, 256};
  CHECK(clamp_schedule(sched, 3) == std::vector<std::size_t>{3});
  CHECK(clamp_schedule(sched, 20) == std::vector<std::size_t>{16, 20});
  CHECK(clamp_schedule(sched, 64) == std::vector<std::size_t>{16, 64});
  CHECK(clamp_schedule(sched, 1000) == sched);
  CHECK(clamp_schedule(sched, 0).empty());

  CHECK(relative_change(std::nullopt, std::nullopt) == 0.0);
  CHECK(std::isinf(relative_change(std::nullopt, 1.0)));
  CHECK(std::isinf(relative_change(0.0, 1.0)));
  CHECK(relative_change(0.0, 0.0) == 0.0);
  CHECK(relative_change(2.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("progressive: degenerate schedule is exact") {
  Graph g = testing::erdos_renyi(30, 0.1, true, 4);
  std::vector<std::size_t> sched{30};
  auto res = propagate_progressive(g, sched, 0.01, 9);
  CHECK(res.used == 30);
  CHECK(res.counts == propagate_exact(g));
  CHECK(res.steps.size() == 1);
  CHECK_FALSE(res.converged);
}

TEST_CASE("progressive: vertex-transitive graph stops at the second step") {
  Graph ring = testing::cycle(300);
  std::vector<std::size_t> sched{16, 64, 256};
  auto res = propagate_progressive(ring, sched, 0.01, 123);
  CHECK(res.used == 64);
  CHECK(res.converged);
  CHECK(res.steps.size() == 2);
  CHECK(res.steps[0].metrics.avg_distance == res.steps[1].metrics.avg_distance);
}

TEST_CASE("progressive: P3 with schedule [1, 2] against hand enumeration") {
  Graph g = testing::path3();
  const auto dist = testing::relaxation_distances(g);
  std::vector<std::size_t> sched{1, 2};
  for (std::uint64_t rng_seed = 0; rng_seed < 12; ++rng_seed) {
    const auto drawn = sample_seeds(g, 2, rng_seed).ids;
    CollisionCounts first{testing::brute_pull_out_counts(dist, {drawn[0]}), 1, 3, 0};
    CollisionCounts both{testing::brute_pull_out_counts(dist, drawn), 2, 3, 0};
    auto m1 = metrics_from_counts(first);
    auto m2 = metrics_from_counts(both);

    auto res = propagate_progressive(g, sched, 0.01, rng_seed);
    CHECK(res.used == 2);
    CHECK(res.counts == both);
    const bool agree = m1.avg_distance == m2.avg_distance &&
                       m1.effective_diameter == m2.effective_diameter &&
                       m1.connectivity_rate == m2.connectivity_rate;
    CHECK(res.converged == agree);
  }
}

TEST_CASE("progressive: argument checks") {
  Graph g = testing::cycle(20);
  std::vector<std::size_t> dec{8, 4};
  std::vector<std::size_t> ok{4, 8};
  std::vector<std::size_t> big{4, 21};
  CHECK_THROWS_AS(propagate_progressive(g, dec, 0.01, 0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_progressive(g, big, 0.01, 0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_progressive(g, ok, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_progressive(g, ok, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_progressive(g, std::vector<std::size_t>{}, 0.5, 0), std::invalid_argument);
}
