#pragma once

// Synthetic experiments behind the repro subcommands and the acceptance
// suite: the two-cluster chain, the Gaussian-blob-plus-strip point cloud and
// a two-region pixel image.

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "flowclust/clustering.hpp"
#include "flowclust/datasets.hpp"
#include "flowclust/flow_clustering.hpp"
#include "flowclust/spectral.hpp"
#include "flowclust/tv_solver.hpp"

namespace flowclust {

struct ChainExperiment {
  ChainSpec chain;
  /// 0-based seed node inside the seed cluster.
  NodeId seed = 2;
  std::size_t iterations = 1000;
};

struct ChainResult {
  LabeledGraph graph;
  TVSolution solution;
  NodeSignal closed_form;
  CertificateReport certificate;
  /// Eigenvector of the smallest non-zero Laplacian eigenvalue.
  std::vector<double> fiedler;
  double fiedler_value = 0.0;
};

ChainResult run_chain_experiment(const ChainExperiment& exp);

/// Distinct values after rounding to the nearest multiple of `resolution`.
std::size_t count_distinct_rounded(const std::vector<double>& values, double resolution);

struct TwoClusterExperiment {
  std::size_t n1 = 200;
  std::size_t n2 = 800;
  std::uint64_t rng_seed = 0;
  std::size_t knn = 100;
  std::optional<double> sigma = 0.03;
  double lambda = 0.01;
  double alpha = 0.005;
  std::size_t eta = 50;
  double min_degree = 12.0;
  std::size_t rounds = 10;
  std::size_t iterations = 1000;
  std::size_t k = 2;
  LaplacianKind spectral_kind = LaplacianKind::kSymmetricNormalized;
  std::size_t threads = 1;
};

struct TwoClusterResult {
  PointCloud points;
  BuiltGraph graph;
  FlowClusterResult flow;
  ClusterAssignment spectral;
  double flow_accuracy = 0.0;
  double spectral_accuracy = 0.0;
  /// Common-neighbour threshold actually used (eta unless rescaled).
  std::size_t eta_used = 0;
};

/// If some node with weighted degree >= min_degree has a neighbour sharing at
/// least eta neighbours with it, eta is used as is. Otherwise eta is rescaled
/// by mean degree / max degree and rounded down, at least 1.
std::size_t effective_eta(const EmpiricalGraph& g, std::size_t eta, double min_degree);

TwoClusterResult run_two_cluster_experiment(const TwoClusterExperiment& exp);

struct PixelRect {
  std::size_t r0, c0, r1, c1;  // 0-based, inclusive
};

struct PixelExperiment {
  std::size_t height = 16;
  std::size_t width = 16;
  PixelRect object{4, 5, 11, 12};
  PixelRect seeds{6, 7, 9, 10};
  std::vector<double> background{0.15, 0.35, 0.8};
  std::vector<double> foreground{0.9, 0.45, 0.1};
  /// Standard deviation of Gaussian noise added per channel (clamped to [0, 1]).
  double noise = 0.05;
  std::size_t hop_radius = 3;
  std::optional<double> sigma = 0.1;
  double weight_floor_quantile = 0.1;
  double lambda = 0.1;
  double alpha = 0.005;
  std::size_t iterations = 1000;
  std::uint64_t rng_seed = 0;
};

struct PixelResult {
  ImageGrid image;
  BuiltGraph graph;
  TVSolution solution;
  double threshold = 0.0;
  std::vector<bool> truth_mask;
  std::vector<bool> flow_mask;
  std::vector<bool> spectral_mask;
  double flow_iou = 0.0;
  double spectral_iou = 0.0;
};

/// Graph, seeded TV solve, mid-gap threshold and a 2-way spectral split of a
/// given image. Uses every field of exp except the image geometry, colours
/// and noise. truth_mask stays empty and the IoUs are left at zero.
PixelResult segment_pixels(const ImageGrid& image, const PixelExperiment& exp);

/// Synthetic two-region image plus segment_pixels, scored against the object
/// rectangle.
PixelResult run_pixel_experiment(const PixelExperiment& exp);

/// Midpoint of the widest gap between consecutive sorted values.
double mid_gap_threshold(std::vector<double> values);

double intersection_over_union(const std::vector<bool>& a, const std::vector<bool>& b);

}  // namespace flowclust
