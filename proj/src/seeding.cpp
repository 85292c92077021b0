#include "flowclust/seeding.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "flowclust/error.hpp"
#include "flowclust/random.hpp"

namespace flowclust {

std::size_t common_neighbors(const EmpiricalGraph& g, NodeId a, NodeId b) {
  // Both lists are sorted by neighbour id.
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  std::size_t count = 0;
  auto ia = na.begin();
  auto ib = nb.begin();
  while (ia != na.end() && ib != nb.end()) {
    if (ia->node < ib->node) {
      ++ia;
    } else if (ib->node < ia->node) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::vector<NodeId> select_seeds(const EmpiricalGraph& g, const SeedParams& p) {
  if (!(p.min_degree >= 0.0)) throw std::invalid_argument("select_seeds: minimum degree must be nonnegative");

  std::vector<NodeId> candidates;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (weighted_degree(g, i) >= p.min_degree) candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw DataError(fmt::format("select_seeds: no node has weighted degree >= {}", p.min_degree));
  }

  Rng rng(p.rng_seed);
  const NodeId anchor = candidates[rng.uniform_index(candidates.size())];
  std::vector<NodeId> seeds{anchor};
  for (const auto& nb : g.neighbors(anchor)) {
    if (common_neighbors(g, anchor, nb.node) >= p.eta) seeds.push_back(nb.node);
  }
  return seeds;
}

}  // namespace flowclust
