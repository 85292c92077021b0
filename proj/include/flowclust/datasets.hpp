#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "flowclust/graph.hpp"

namespace flowclust {

/// n points in R^d as the rows of an n x d matrix, with optional ground truth.
struct PointCloud {
  Eigen::MatrixXd points;
  /// Empty when unlabelled; otherwise one label in 1..k per point.
  std::vector<int> labels;
};

struct LabeledGraph {
  EmpiricalGraph graph;
  std::vector<int> labels;
};

/// Path over size1 + size2 nodes; the edge joining the two clusters has weight
/// boundary_weight, all others intra_weight. Labels are 1 then 2.
LabeledGraph gen_chain(std::size_t size1, std::size_t size2, double intra_weight, double boundary_weight);

/// n1 draws from N((2, 0.2), 0.01 I) labelled 1, then n2 draws uniform on
/// the open box (0, 8) x (-0.05, 0) labelled 2.
PointCloud gen_gauss_uniform(std::size_t n1, std::size_t n2, std::uint64_t rng_seed);

struct BuiltGraph {
  EmpiricalGraph graph;
  /// Kernel bandwidth actually used.
  double sigma = 1.0;
};

/// exp(-d^2 / (2 sigma^2))
double gaussian_weight(double distance, double sigma);

/// Median of the given distances, ignoring zeros when at least half of them
/// are zero; 1.0 when all are zero.
double median_bandwidth(std::vector<double> distances);

/// Symmetrised k-nearest-neighbour graph with Gaussian-kernel weights: {i, j}
/// is an edge if either point ranks the other among its knn nearest (distance
/// ties broken toward the lower index). sigma defaults to the median of all
/// pairwise distances. If all points coincide the result is the complete
/// graph with unit weights. Throws std::invalid_argument for n < 2, knn == 0
/// or a non-positive sigma.
BuiltGraph build_knn_gauss_graph(const PointCloud& pc, std::optional<double> sigma, std::size_t knn);

/// build_knn_gauss_graph, doubling knn (with a warning on stderr) until the
/// graph is connected or knn reaches n - 1.
BuiltGraph build_connected_knn_gauss_graph(const PointCloud& pc, std::optional<double> sigma, std::size_t knn);

/// Image with values in [0, 1], row-major, channels interleaved.
struct ImageGrid {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 1;
  std::vector<double> pixels;

  double at(std::size_t row, std::size_t col, std::size_t ch = 0) const {
    return pixels[(row * width + col) * channels + ch];
  }
  double& at(std::size_t row, std::size_t col, std::size_t ch = 0) {
    return pixels[(row * width + col) * channels + ch];
  }
};

/// Pixel similarity graph. Nodes are pixels in row-major order. Candidate
/// edges join pixels at Chebyshev distance <= hop_radius; weights are the
/// Gaussian kernel of the pixel-value distance (sigma defaults to the median
/// of candidate distances). Then the floor(quantile * m) lightest of the m
/// candidates are dropped (ties by candidate order).
BuiltGraph build_pixel_graph(const ImageGrid& img, std::size_t hop_radius, std::optional<double> sigma,
                             double weight_floor_quantile);

/// Two flat regions: background colour everywhere except an axis-aligned
/// rectangle [r0, r1] x [c0, c1] (0-based, inclusive) of object colour.
ImageGrid make_two_region_image(std::size_t height, std::size_t width, std::size_t r0, std::size_t c0,
                                std::size_t r1, std::size_t c1, const std::vector<double>& background,
                                const std::vector<double>& object);

}  // namespace flowclust
