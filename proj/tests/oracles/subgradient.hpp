#pragma once

// Long-run subgradient method on the seeded TV objective. Independent of the
// primal-dual solver: it never forms flows, only signs of edge differences.

#include <cmath>
#include <vector>

#include "flowclust/graph.hpp"

namespace flowclust::oracle {

struct SubgradientOptions {
  std::size_t iterations = 1'000'000;
  /// Step c / sqrt(t).
  double c = 0.5;
};

/// Returns the average of the iterates over the second half of the run.
inline std::vector<double> subgradient_tv(const EmpiricalGraph& g, const std::vector<NodeId>& seeds, double lambda,
                                          double alpha, const SubgradientOptions& opt = {}) {
  const std::size_t n = g.num_nodes();
  std::vector<char> is_seed(n, 0);
  for (NodeId s : seeds) is_seed[s] = 1;
  std::vector<double> u(n, 0.0), grad(n), avg(n, 0.0);
  std::size_t averaged = 0;
  for (std::size_t t = 1; t <= opt.iterations; ++t) {
    for (std::size_t i = 0; i < n; ++i) grad[i] = is_seed[i] ? u[i] - 1.0 : alpha * u[i];
    for (const Edge& e : g.edges()) {
      const double d = u[e.tail] - u[e.head];
      const double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
      grad[e.tail] += lambda * e.weight * s;
      grad[e.head] -= lambda * e.weight * s;
    }
    const double step = opt.c / std::sqrt(static_cast<double>(t));
    for (std::size_t i = 0; i < n; ++i) u[i] -= step * grad[i];
    if (2 * t > opt.iterations) {
      ++averaged;
      for (std::size_t i = 0; i < n; ++i) avg[i] += (u[i] - avg[i]) / static_cast<double>(averaged);
    }
  }
  return avg;
}

}  // namespace flowclust::oracle
