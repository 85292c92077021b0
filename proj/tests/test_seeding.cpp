#include <algorithm>
#include <stdexcept>

#include <gtest/gtest.h>

#include "flowclust/error.hpp"
#include "flowclust/random.hpp"
#include "flowclust/seeding.hpp"
#include "oracles/graphs.hpp"

namespace flowclust {
namespace {

TEST(CommonNeighbors, Counts) {
  const EmpiricalGraph k5 = testing::complete_graph(5);
  EXPECT_EQ(common_neighbors(k5, 0, 1), 3u);
  const EmpiricalGraph path = testing::path_graph(3);
  EXPECT_EQ(common_neighbors(path, 0, 1), 0u);
  EXPECT_EQ(common_neighbors(path, 0, 2), 1u);
}

TEST(SelectSeeds, CompleteGraphTakesEveryNode) {
  const EmpiricalGraph k5 = testing::complete_graph(5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto seeds = select_seeds(k5, {3, 4.0, s});
    ASSERT_EQ(seeds.size(), 5u);
    std::sort(seeds.begin(), seeds.end());
    EXPECT_EQ(seeds, (std::vector<NodeId>{0, 1, 2, 3, 4}));
  }
}

TEST(SelectSeeds, PathMiddleAnchorHasNoTriangles) {
  const EmpiricalGraph path = testing::path_graph(3);
  bool found = false;
  for (std::uint64_t s = 0; s < 50 && !found; ++s) {
    const auto seeds = select_seeds(path, {1, 0.0, s});
    if (seeds.front() != 1) continue;
    found = true;
    EXPECT_EQ(seeds, (std::vector<NodeId>{1}));
  }
  EXPECT_TRUE(found);
}

TEST(SelectSeeds, SingleNode) {
  EXPECT_EQ(select_seeds(EmpiricalGraph(1, {}), {7, 0.0, 3}), (std::vector<NodeId>{0}));
}

TEST(SelectSeeds, AnchorUniformAmongCandidates) {
  // Star: only the centre has weighted degree >= 2.
  const EmpiricalGraph star = testing::star_graph(6);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_EQ(select_seeds(star, {1, 2.0, s}).front(), 0u);
  // Path of 4: nodes 1 and 2 qualify; both should appear across draws.
  const EmpiricalGraph path = testing::path_graph(4);
  std::vector<int> hits(4, 0);
  for (std::uint64_t s = 0; s < 200; ++s) ++hits[select_seeds(path, {1, 2.0, s}).front()];
  EXPECT_EQ(hits[0], 0);
  EXPECT_EQ(hits[3], 0);
  EXPECT_GT(hits[1], 60);
  EXPECT_GT(hits[2], 60);
}

TEST(SelectSeeds, StructuralInvariants) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const EmpiricalGraph g = testing::random_connected_graph(20, 0.3, rng, false);
    const SeedParams p{2, 1.5, static_cast<std::uint64_t>(trial)};
    std::vector<NodeId> seeds;
    try {
      seeds = select_seeds(g, p);
    } catch (const DataError&) {
      continue;
    }
    const NodeId anchor = seeds.front();
    EXPECT_GE(weighted_degree(g, anchor), p.min_degree);
    EXPECT_TRUE(std::is_sorted(seeds.begin() + 1, seeds.end()));
    for (std::size_t i = 1; i < seeds.size(); ++i) {
      EXPECT_TRUE(g.has_edge(anchor, seeds[i]));
      EXPECT_GE(common_neighbors(g, anchor, seeds[i]), p.eta);
    }
    // Raising eta never enlarges the set for the same draw.
    SeedParams stricter = p;
    stricter.eta = p.eta + 1;
    const auto fewer = select_seeds(g, stricter);
    EXPECT_EQ(fewer.front(), anchor);
    EXPECT_LE(fewer.size(), seeds.size());
    for (NodeId v : fewer) EXPECT_NE(std::find(seeds.begin(), seeds.end(), v), seeds.end());
  }
}

TEST(SelectSeeds, Deterministic) {
  Rng rng(37);
  const EmpiricalGraph g = testing::random_connected_graph(40, 0.2, rng, false);
  EXPECT_EQ(select_seeds(g, {2, 1.0, 99}), select_seeds(g, {2, 1.0, 99}));
}

TEST(SelectSeeds, Errors) {
  const EmpiricalGraph path = testing::path_graph(3);
  EXPECT_THROW(select_seeds(path, {1, 5.0, 0}), DataError);
  EXPECT_THROW(select_seeds(path, {1, -1.0, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace flowclust
