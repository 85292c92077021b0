#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace flowclust {

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
  /// Stop once no centroid moves by tol or more (Euclidean).
  double tol = 1e-8;
  std::uint64_t rng_seed = 0;
};

struct KMeansResult {
  /// Cluster label in 1..k per point.
  std::vector<int> labels;
  /// k x d
  Eigen::MatrixXd centroids;
  /// Sum of squared distances of points to their assigned centroid.
  double inertia = 0.0;
  std::size_t best_restart = 0;
  /// Final inertia of every restart, in restart order.
  std::vector<double> restart_inertias;
};

/// k-means++ seeding followed by Lloyd iterations, repeated cfg.restarts times;
/// restart r draws from Rng(cfg.rng_seed + r). Returns the restart with the
/// lowest inertia (earliest on ties). Points are the rows of an n x d matrix.
/// Assignment ties go to the lower centroid index; a cluster that empties is
/// reseeded with the point farthest from its centroid.
///
/// Throws std::invalid_argument if k == 0, k > n or the config is invalid.
KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansConfig& cfg);

}  // namespace flowclust
