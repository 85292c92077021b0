#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "flowclust/clustering.hpp"
#include "flowclust/graph.hpp"
#include "flowclust/kmeans.hpp"
#include "flowclust/seeding.hpp"

namespace flowclust {

struct FlowClusterConfig {
  double lambda = 0.01;
  double alpha = 0.005;
  std::size_t k = 2;
  /// Number of seed rounds, i.e. feature columns.
  std::size_t rounds = 10;
  /// Solver iterations per round.
  std::size_t iterations = 1000;
  /// eta, min degree; round r draws its anchor with rng_seed + r.
  SeedParams seed_params;
  /// Restarts, iteration cap, tolerance and RNG seed for k-means (k is taken
  /// from this config).
  KMeansConfig kmeans;
  /// Explicit seed sets; round r uses forced_seeds[r % size]. Bypasses the
  /// common-neighbour heuristic.
  std::optional<std::vector<std::vector<NodeId>>> forced_seeds;
  /// Scale feature rows to unit length before k-means.
  bool normalize_rows = false;
  /// Worker threads for the solver rounds; results do not depend on it.
  std::size_t threads = 1;
};

/// n x rounds; column r holds the TV solution of round r.
using FeatureMatrix = Eigen::MatrixXd;

struct FlowClusterResult {
  ClusterAssignment assignment;
  FeatureMatrix features;
  std::vector<std::vector<NodeId>> seed_sets;
};

/// Seed sets for every round, as flow_cluster would draw them.
std::vector<std::vector<NodeId>> round_seed_sets(const EmpiricalGraph& g, const FlowClusterConfig& cfg);

/// Flow-based clustering: one seeded TV solve per round, solutions stacked as
/// node features, k-means on the feature rows.
///
/// Throws std::invalid_argument for an invalid config, DataError when seeding
/// fails or when the features have fewer than k distinct rows.
FlowClusterResult flow_cluster(const EmpiricalGraph& g, const FlowClusterConfig& cfg);

/// Number of distinct rows (exact comparison).
std::size_t count_distinct_rows(const Eigen::MatrixXd& m);

}  // namespace flowclust
