#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "flowclust/datasets.hpp"

namespace flowclust {
namespace {

TEST(GenChain, WeightsAndLabels) {
  const LabeledGraph lg = gen_chain(3, 2, 1.0, 0.25);
  EXPECT_EQ(lg.graph.num_nodes(), 5u);
  ASSERT_EQ(lg.graph.num_edges(), 4u);
  EXPECT_EQ(lg.labels, (std::vector<int>{1, 1, 1, 2, 2}));
  for (const Edge& e : lg.graph.edges()) {
    EXPECT_EQ(e.head, e.tail + 1);
    EXPECT_EQ(e.weight, e.tail == 2 ? 0.25 : 1.0);
  }
  EXPECT_EQ(gen_chain(1, 1, 1.0, 0.5).graph.num_edges(), 1u);
  EXPECT_THROW(gen_chain(0, 3, 1.0, 0.5), std::invalid_argument);
}

TEST(GenGaussUniform, BlobMeanAndStripBounds) {
  const PointCloud pc = gen_gauss_uniform(1000, 1000, 11);
  ASSERT_EQ(pc.points.rows(), 2000);
  const Eigen::RowVector2d mean = pc.points.topRows(1000).colwise().mean();
  const double tol = 3.0 * 0.1 / std::sqrt(1000.0);
  EXPECT_NEAR(mean[0], 2.0, tol);
  EXPECT_NEAR(mean[1], 0.2, tol);
  for (Eigen::Index i = 1000; i < 2000; ++i) {
    EXPECT_GT(pc.points(i, 0), 0.0);
    EXPECT_LT(pc.points(i, 0), 8.0);
    EXPECT_GT(pc.points(i, 1), -0.05);
    EXPECT_LT(pc.points(i, 1), 0.0);
  }
  for (std::size_t i = 0; i < 2000; ++i) EXPECT_EQ(pc.labels[i], i < 1000 ? 1 : 2);
}

TEST(GenGaussUniform, Reproducible) {
  EXPECT_EQ(gen_gauss_uniform(20, 30, 5).points, gen_gauss_uniform(20, 30, 5).points);
  EXPECT_NE(gen_gauss_uniform(20, 30, 5).points, gen_gauss_uniform(20, 30, 6).points);
  const PointCloud tiny = gen_gauss_uniform(1, 1, 0);
  EXPECT_EQ(tiny.points.rows(), 2);
  EXPECT_EQ(tiny.labels, (std::vector<int>{1, 2}));
}

TEST(GaussianWeight, Values) {
  EXPECT_DOUBLE_EQ(gaussian_weight(0.0, 0.7), 1.0);
  EXPECT_NEAR(gaussian_weight(std::sqrt(2.0), 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(gaussian_weight(0.3, 0.3), std::exp(-0.5), 1e-15);
}

TEST(MedianBandwidth, Rules) {
  EXPECT_DOUBLE_EQ(median_bandwidth({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median_bandwidth({0.0, 0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(median_bandwidth({0.0, 0.0, 0.0, 4.0, 6.0}), 5.0);
  EXPECT_DOUBLE_EQ(median_bandwidth({0.0, 0.0, 4.0, 6.0}), 2.0);
}

TEST(KnnGraph, IdenticalPointsGiveCompleteUnitGraph) {
  PointCloud pc;
  pc.points = Eigen::MatrixXd::Ones(4, 2);
  const BuiltGraph bg = build_knn_gauss_graph(pc, std::nullopt, 1);
  EXPECT_EQ(bg.graph.num_edges(), 6u);
  for (const Edge& e : bg.graph.edges()) EXPECT_EQ(e.weight, 1.0);
}

TEST(KnnGraph, PointsOnALine) {
  PointCloud pc;
  pc.points.resize(4, 1);
  pc.points << 0.0, 1.0, 3.0, 6.0;
  const BuiltGraph bg = build_knn_gauss_graph(pc, 1.0, 1);
  // Nearest: 0->1, 1->0, 2->1, 3->2.
  ASSERT_EQ(bg.graph.num_edges(), 3u);
  EXPECT_TRUE(bg.graph.has_edge(0, 1));
  EXPECT_TRUE(bg.graph.has_edge(1, 2));
  EXPECT_TRUE(bg.graph.has_edge(2, 3));
  for (const Edge& e : bg.graph.edges()) {
    const double d = pc.points(e.head, 0) - pc.points(e.tail, 0);
    EXPECT_NEAR(e.weight, std::exp(-d * d / 2.0), 1e-15);
  }
}

TEST(KnnGraph, MedianSigmaDefault) {
  PointCloud pc;
  pc.points.resize(3, 1);
  pc.points << 0.0, 1.0, 3.0;
  // Pairwise distances 1, 3, 2.
  EXPECT_DOUBLE_EQ(build_knn_gauss_graph(pc, std::nullopt, 2).sigma, 2.0);
}

TEST(KnnGraph, ExperimentCloudIsConnected) {
  const PointCloud pc = gen_gauss_uniform(200, 800, 0);
  const BuiltGraph bg = build_connected_knn_gauss_graph(pc, std::nullopt, 12);
  const auto comps = connected_components(bg.graph);
  EXPECT_TRUE(std::all_of(comps.begin(), comps.end(), [](std::uint32_t c) { return c == 0; }));
}

TEST(KnnGraph, Errors) {
  PointCloud pc;
  pc.points = Eigen::MatrixXd::Zero(1, 2);
  EXPECT_THROW(build_knn_gauss_graph(pc, 1.0, 1), std::invalid_argument);
  pc.points = Eigen::MatrixXd::Zero(3, 2);
  EXPECT_THROW(build_knn_gauss_graph(pc, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(build_knn_gauss_graph(pc, -1.0, 1), std::invalid_argument);
}

ImageGrid gray(std::size_t h, std::size_t w, std::vector<double> px) {
  ImageGrid img;
  img.height = h;
  img.width = w;
  img.pixels = std::move(px);
  return img;
}

TEST(PixelGraph, TwoByTwoIsComplete) {
  const BuiltGraph bg = build_pixel_graph(gray(2, 2, {0.1, 0.2, 0.3, 0.4}), 1, 1.0, 0.0);
  EXPECT_EQ(bg.graph.num_edges(), 6u);
  EXPECT_NEAR(bg.graph.edges()[0].weight, gaussian_weight(0.1, 1.0), 1e-15);
}

TEST(PixelGraph, RowRadiusThree) {
  const BuiltGraph bg = build_pixel_graph(gray(1, 5, {0.0, 0.0, 0.0, 0.0, 0.0}), 3, 1.0, 0.0);
  for (NodeId j = 1; j < 5; ++j) EXPECT_EQ(bg.graph.has_edge(0, j), j <= 3) << j;
  EXPECT_EQ(bg.graph.num_edges(), 3u + 3u + 2u + 1u);
}

TEST(PixelGraph, DropsLightestQuantile) {
  ImageGrid img = make_two_region_image(16, 16, 4, 5, 11, 12, {0.2}, {0.9});
  const BuiltGraph full = build_pixel_graph(img, 3, 0.1, 0.0);
  const BuiltGraph cut = build_pixel_graph(img, 3, 0.1, 0.1);
  const std::size_t m = full.graph.num_edges();
  EXPECT_EQ(cut.graph.num_edges(), m - static_cast<std::size_t>(std::floor(0.1 * static_cast<double>(m))));
  double kept_min = 1.0;
  for (const Edge& e : cut.graph.edges()) kept_min = std::min(kept_min, e.weight);
  std::size_t lighter = 0;
  for (const Edge& e : full.graph.edges()) lighter += e.weight < kept_min;
  EXPECT_LE(lighter, m - cut.graph.num_edges());
}

TEST(PixelGraph, MedianSigmaAndErrors) {
  // Candidate distances on a 1x3 row with radius 2: 0.1, 0.3, 0.2.
  EXPECT_NEAR(build_pixel_graph(gray(1, 3, {0.0, 0.1, 0.3}), 2, std::nullopt, 0.0).sigma, 0.2, 1e-15);
  EXPECT_THROW(build_pixel_graph(gray(1, 3, {0.0, 0.1, 0.3}), 0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(build_pixel_graph(gray(1, 3, {0.0, 0.1}), 1, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(build_pixel_graph(gray(1, 3, {0.0, 0.1, 0.3}), 1, 1.0, 1.0), std::invalid_argument);
}

TEST(TwoRegionImage, Layout) {
  const ImageGrid img = make_two_region_image(4, 5, 1, 2, 2, 3, {0.1, 0.2}, {0.7, 0.8});
  EXPECT_EQ(img.channels, 2u);
  EXPECT_EQ(img.pixels.size(), 40u);
  EXPECT_EQ(img.at(1, 2, 1), 0.8);
  EXPECT_EQ(img.at(2, 3, 0), 0.7);
  EXPECT_EQ(img.at(0, 2, 0), 0.1);
  EXPECT_EQ(img.at(1, 4, 1), 0.2);
  EXPECT_THROW(make_two_region_image(4, 5, 1, 2, 2, 3, {0.1}, {0.7, 0.8}), std::invalid_argument);
}

}  // namespace
}  // namespace flowclust
