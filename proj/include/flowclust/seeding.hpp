#pragma once

#include <cstdint>
#include <vector>

#include "flowclust/graph.hpp"

namespace flowclust {

struct SeedParams {
  /// Minimum number of common neighbours a neighbour of the anchor needs.
  std::size_t eta = 50;
  /// Minimum weighted degree of the anchor.
  double min_degree = 12.0;
  std::uint64_t rng_seed = 0;
};

/// Number of nodes adjacent to both a and b (unweighted).
std::size_t common_neighbors(const EmpiricalGraph& g, NodeId a, NodeId b);

/// Common-neighbour seed heuristic.
///
/// Draws an anchor uniformly (Rng seeded with p.rng_seed) among nodes with
/// weighted degree >= p.min_degree, then adds every neighbour of the anchor
/// that shares at least p.eta neighbours with it. The anchor comes first in
/// the result, followed by the added neighbours in increasing id.
///
/// Throws DataError if no node meets the degree threshold and
/// std::invalid_argument if min_degree is negative.
std::vector<NodeId> select_seeds(const EmpiricalGraph& g, const SeedParams& p);

}  // namespace flowclust
