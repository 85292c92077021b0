#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "flowclust/error.hpp"
#include "flowclust/graph.hpp"
#include "flowclust/random.hpp"
#include "oracles/graphs.hpp"

namespace flowclust {
namespace {

TEST(EmpiricalGraph, CanonicalisesAndKeepsOrder) {
  const EmpiricalGraph g(6, {{4, 1, 0.7}, {0, 2, 1.0}});
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edge(0).tail, 1u);
  EXPECT_EQ(g.edge(0).head, 4u);
  EXPECT_DOUBLE_EQ(g.edge(0).weight, 0.7);
  EXPECT_EQ(g.edge(1).tail, 0u);
  EXPECT_TRUE(g.has_edge(4, 1));
  EXPECT_TRUE(g.has_edge(1, 4));
  EXPECT_FALSE(g.has_edge(0, 1));
}

TEST(EmpiricalGraph, NeighboursSortedWithEdgeIds) {
  const EmpiricalGraph g(4, {{0, 3, 1.0}, {0, 1, 2.0}, {2, 0, 3.0}});
  const auto nb = g.neighbors(0);
  ASSERT_EQ(nb.size(), 3u);
  EXPECT_EQ(nb[0].node, 1u);
  EXPECT_EQ(nb[0].edge, 1u);
  EXPECT_EQ(nb[1].node, 2u);
  EXPECT_EQ(nb[1].edge, 2u);
  EXPECT_EQ(nb[2].node, 3u);
  EXPECT_EQ(nb[2].edge, 0u);
  EXPECT_EQ(g.degree(3), 1u);
}

TEST(EmpiricalGraph, RejectsBadInput) {
  EXPECT_THROW(EmpiricalGraph(3, {{1, 1, 1.0}}), DataError);
  EXPECT_THROW(EmpiricalGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), DataError);
  EXPECT_THROW(EmpiricalGraph(3, {{0, 3, 1.0}}), DataError);
  EXPECT_THROW(EmpiricalGraph(3, {{0, 1, 0.0}}), DataError);
  EXPECT_THROW(EmpiricalGraph(3, {{0, 1, -1.0}}), DataError);
  EXPECT_THROW(EmpiricalGraph(3, {{0, 1, NAN}}), DataError);
  EXPECT_THROW(EmpiricalGraph(3, {{0, 1, INFINITY}}), DataError);
}

TEST(Orient, TriangleFollowsMinMaxRule) {
  const OrientedGraph og = orient(EmpiricalGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  ASSERT_EQ(og.num_edges(), 3u);
  EXPECT_EQ(og.tails()[0], 0u);
  EXPECT_EQ(og.heads()[0], 1u);
  EXPECT_EQ(og.tails()[1], 1u);
  EXPECT_EQ(og.heads()[1], 2u);
  EXPECT_EQ(og.tails()[2], 0u);
  EXPECT_EQ(og.heads()[2], 2u);
}

TEST(Orient, SingleReversedEdge) {
  const OrientedGraph og = orient(EmpiricalGraph(5, {{4, 1, 0.7}}));
  ASSERT_EQ(og.num_edges(), 1u);
  EXPECT_EQ(og.tails()[0], 1u);
  EXPECT_EQ(og.heads()[0], 4u);
  EXPECT_DOUBLE_EQ(og.weights()[0], 0.7);
}

TEST(Orient, EmptyEdgeSet) {
  const OrientedGraph og = orient(EmpiricalGraph(4, {}));
  EXPECT_EQ(og.num_edges(), 0u);
  EXPECT_EQ(og.num_nodes(), 4u);
}

TEST(Orient, IsBijectionWithSignedIncidence) {
  Rng rng(7);
  const EmpiricalGraph g = testing::random_connected_graph(12, 0.3, rng, false);
  const OrientedGraph og(g);
  std::vector<int> seen(g.num_edges(), 0);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    EdgeId last = 0;
    bool first = true;
    for (const auto& inc : og.incident(i)) {
      if (!first) EXPECT_GT(inc.edge, last);
      first = false;
      last = inc.edge;
      const bool is_tail = og.tails()[inc.edge] == i;
      EXPECT_EQ(inc.sign, is_tail ? 1.0 : -1.0);
      EXPECT_TRUE(is_tail || og.heads()[inc.edge] == i);
      ++seen[inc.edge];
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    EXPECT_EQ(seen[e], 2);
    EXPECT_LT(og.tails()[e], og.heads()[e]);
    EXPECT_EQ(og.tails()[e], g.edge(e).tail);
    EXPECT_EQ(og.heads()[e], g.edge(e).head);
  }
}

TEST(WeightedDegree, Examples) {
  const EmpiricalGraph path = testing::path_graph(3);
  EXPECT_DOUBLE_EQ(weighted_degree(path, 1), 2.0);
  EXPECT_DOUBLE_EQ(weighted_degree(EmpiricalGraph(3, {{0, 1, 1.0}}), 2), 0.0);
  EXPECT_DOUBLE_EQ(weighted_degree(testing::star_graph(5, 0.5), 0), 2.0);
  EXPECT_THROW(weighted_degree(path, 3), std::out_of_range);
}

TEST(Laplacian, Examples) {
  Eigen::Matrix3d expected;
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(laplacian(testing::path_graph(3)), Eigen::MatrixXd(expected));
  EXPECT_EQ(laplacian(EmpiricalGraph(3, {})), Eigen::MatrixXd::Zero(3, 3));
  Eigen::Matrix2d k2;
  k2 << 2.5, -2.5, -2.5, 2.5;
  EXPECT_EQ(laplacian(EmpiricalGraph(2, {{0, 1, 2.5}})), Eigen::MatrixXd(k2));
}

TEST(Laplacian, RowSumsVanishAndQuadraticFormMatchesEdgeSum) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const EmpiricalGraph g = testing::random_connected_graph(5 + trial, 0.25, rng, false);
    const Eigen::MatrixXd l = laplacian(g);
    EXPECT_LE(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(l.isApprox(l.transpose(), 0.0));
    for (int s = 0; s < 5; ++s) {
      Eigen::VectorXd u(g.num_nodes());
      for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = 4.0 * rng.uniform01() - 2.0;
      double edge_sum = 0.0;
      for (const Edge& e : g.edges()) edge_sum += e.weight * (u[e.tail] - u[e.head]) * (u[e.tail] - u[e.head]);
      const double quad = u.dot(l * u);
      EXPECT_NEAR(quad, edge_sum, 1e-10 * std::abs(edge_sum));
    }
  }
}

TEST(TvNorm, Examples) {
  EXPECT_DOUBLE_EQ(tv_norm(testing::cycle_graph(5), NodeSignal(5, 3.7)), 0.0);
  EXPECT_DOUBLE_EQ(tv_norm(EmpiricalGraph(2, {{0, 1, 2.0}}), NodeSignal(std::vector<double>{1.0, 0.0})), 2.0);
  EXPECT_DOUBLE_EQ(tv_norm(testing::path_graph(3), NodeSignal(std::vector<double>{0.0, 1.0, 3.0})), 3.0);
  EXPECT_THROW(tv_norm(testing::path_graph(3), NodeSignal(2)), std::invalid_argument);
}

TEST(TvNorm, ShiftInvariantAndAbsolutelyHomogeneous) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const EmpiricalGraph g = testing::random_connected_graph(8, 0.3, rng, false);
    NodeSignal u(g.num_nodes());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform01();
    const double base = tv_norm(g, u);
    const double c = 10.0 * rng.uniform01() - 5.0;
    NodeSignal shifted = u, scaled = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
      shifted[i] += c;
      scaled[i] *= c;
    }
    EXPECT_NEAR(tv_norm(g, shifted), base, 1e-12 * (1.0 + std::abs(c)) * g.num_edges());
    EXPECT_NEAR(tv_norm(g, scaled), std::abs(c) * base, 1e-12 * (1.0 + std::abs(c)) * g.num_edges());
  }
}

TEST(ConnectedComponents, NumbersByFirstNode) {
  const EmpiricalGraph g(6, {{3, 4, 1.0}, {0, 5, 1.0}});
  const auto c = connected_components(g);
  EXPECT_EQ(c, (std::vector<std::uint32_t>{0, 1, 2, 3, 3, 0}));
}

TEST(Signals, FiniteChecks) {
  NodeSignal u(3, 1.0);
  EXPECT_TRUE(u.all_finite());
  u[1] = NAN;
  EXPECT_FALSE(u.all_finite());
  FlowVector h(2, 0.0);
  EXPECT_TRUE(h.all_finite());
  h[0] = INFINITY;
  EXPECT_FALSE(h.all_finite());
}

}  // namespace
}  // namespace flowclust
