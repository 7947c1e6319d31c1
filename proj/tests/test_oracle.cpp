#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "nfprop/oracle.hpp"
#include "test_support.hpp"

using namespace nfprop;
using Hops = std::vector<std::uint64_t>;

TEST_CASE("bfs_ball_profile") {
  CHECK(bfs_ball_profile(testing::path3(), 0) == Hops{1, 1});
  CHECK(bfs_ball_profile(testing::star3(), 0) == Hops{3});
  CHECK(bfs_ball_profile(testing::star3(), 1) == Hops{1, 2});
  Graph iso = Graph::from_arcs(2, {}, false);
  CHECK(bfs_ball_profile(iso, 1).empty());
  CHECK_THROWS_AS(bfs_ball_profile(iso, 2), std::out_of_range);

  std::vector<std::pair<NodeId, NodeId>> arcs{{0, 1}, {1, 2}};
  Graph dpath = Graph::from_arcs(3, arcs, true);
  CHECK(bfs_ball_profile(dpath, 0, Direction::kPullOut) == Hops{1, 1});
  CHECK(bfs_ball_profile(dpath, 0, Direction::kPullIn).empty());
  CHECK(bfs_ball_profile(dpath, 2, Direction::kPullIn) == Hops{1, 1});
}

TEST_CASE("exact_nf on fixtures") {
  auto p3 = exact_nf(testing::path3());
  CHECK(p3.counts_by_hop == Hops{4, 6});
  CHECK(p3.diameter == 2);
  CHECK(p3.per_source_ball_sizes == Hops{2, 2, 2});

  auto c3 = exact_nf(testing::directed_cycle3());
  CHECK(c3.counts_by_hop == Hops{3, 6});
  CHECK(c3.diameter == 2);

  auto e = exact_nf(Graph::from_arcs(5, {}, false));
  CHECK(e.counts_by_hop.empty());
  CHECK(e.diameter == 0);
  CHECK(e.per_source_ball_sizes == Hops(5, 0));
}

TEST_CASE("exact_nf equals the relaxation oracle and propagate_exact") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const bool directed = trial % 2 == 0;
    Graph g = testing::erdos_renyi(n, 0.12, directed, rng());
    auto nf = exact_nf(g);
    CHECK(nf.counts_by_hop == testing::brute_cumulative(testing::relaxation_distances(g)));
    const auto ball_total = std::accumulate(nf.per_source_ball_sizes.begin(), nf.per_source_ball_sizes.end(),
                                            std::uint64_t{0});
    CHECK(ball_total == (nf.counts_by_hop.empty() ? 0 : nf.counts_by_hop.back()));
    CHECK(nf.counts_by_hop == propagate_exact(g).cumulative());
    CHECK(nf.counts_by_hop == exact_nf(g, Direction::kPullIn).counts_by_hop);
    for (int threads : {1, 4}) CHECK(exact_nf(g, Direction::kPullOut, threads).counts_by_hop == nf.counts_by_hop);
  }
  for (int trial = 0; trial < 4; ++trial) {
    Graph g = testing::erdos_renyi(200, 0.015, trial % 2 == 0, rng());
    CHECK(exact_nf(g).counts_by_hop == propagate_exact(g).cumulative());
  }
}

TEST_CASE("rand_bfs_estimate equals propagation in the opposite direction") {
  SeedSet zero{{0}, 0};
  CHECK(rand_bfs_estimate(testing::path3(), zero) == propagate_s(testing::path3(), zero));
  Graph c3 = testing::directed_cycle3();
  CHECK(rand_bfs_estimate(c3, zero) == propagate_s(transpose(c3), zero));
  CHECK(rand_bfs_estimate(c3, zero) == propagate_s(c3, zero, Direction::kPullIn));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    Graph g = testing::erdos_renyi(n, 0.08, true, rng());
    SeedSet seeds = sample_seeds(g, 1 + rng() % n, rng());
    CHECK(rand_bfs_estimate(g, seeds, Direction::kPullOut) == propagate_s(g, seeds, Direction::kPullIn));
    CHECK(rand_bfs_estimate(g, seeds, Direction::kPullIn) == propagate_p(g, seeds, Direction::kPullOut));

    SeedSet all;
    all.ids.resize(n);
    std::iota(all.ids.begin(), all.ids.end(), NodeId{0});
    CHECK(rand_bfs_estimate(g, all).cumulative() == exact_nf(g).counts_by_hop);
  }
}
