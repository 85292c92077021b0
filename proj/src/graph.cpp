#include "flowclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include <fmt/format.h>

#include "flowclust/error.hpp"

namespace flowclust {

bool NodeSignal::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

bool FlowVector::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

EmpiricalGraph::EmpiricalGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ > std::numeric_limits<NodeId>::max()) throw DataError("graph: node count too large");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (auto& e : edges_) {
    if (e.tail > e.head) std::swap(e.tail, e.head);
    if (e.tail == e.head) throw DataError(fmt::format("graph: self-loop at node {}", e.tail + 1));
    if (e.head >= n_) {
      throw DataError(fmt::format("graph: edge ({},{}) exceeds node count {}", e.tail + 1, e.head + 1, n_));
    }
    if (!(std::isfinite(e.weight) && e.weight > 0.0)) {
      throw DataError(fmt::format("graph: edge ({},{}) has non-positive weight {}", e.tail + 1, e.head + 1, e.weight));
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(e.tail) << 32) | e.head;
    if (!seen.insert(key).second) {
      throw DataError(fmt::format("graph: duplicate edge ({},{})", e.tail + 1, e.head + 1));
    }
  }

  std::vector<std::size_t> counts(n_, 0);
  for (const auto& e : edges_) {
    ++counts[e.tail];
    ++counts[e.head];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + counts[i];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adjacency_[fill[e.tail]++] = {e.head, id};
    adjacency_[fill[e.head]++] = {e.tail, id};
  }
  for (std::size_t i = 0; i < n_; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

bool EmpiricalGraph::has_edge(NodeId a, NodeId b) const {
  if (a >= n_ || b >= n_) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), Neighbor{b, 0},
                            [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
}

OrientedGraph::OrientedGraph(const EmpiricalGraph& g) : n_(g.num_nodes()) {
  const std::size_t m = g.num_edges();
  tails_.reserve(m);
  heads_.reserve(m);
  weights_.reserve(m);
  for (const auto& e : g.edges()) {
    tails_.push_back(e.tail);
    heads_.push_back(e.head);
    weights_.push_back(e.weight);
  }
  offsets_.assign(n_ + 1, 0);
  for (NodeId i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + g.degree(i);
  incidence_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < m; ++e) {
    incidence_[fill[tails_[e]]++] = {e, 1.0};
    incidence_[fill[heads_[e]]++] = {e, -1.0};
  }
}

OrientedGraph orient(const EmpiricalGraph& g) { return OrientedGraph(g); }

double weighted_degree(const EmpiricalGraph& g, NodeId i) {
  if (i >= g.num_nodes()) {
    throw std::out_of_range(fmt::format("weighted_degree: node {} out of range 1..{}", i + 1, g.num_nodes()));
  }
  double d = 0.0;
  for (const auto& nb : g.neighbors(i)) d += g.edge(nb.edge).weight;
  return d;
}

Eigen::MatrixXd laplacian(const EmpiricalGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    L(e.tail, e.head) -= e.weight;
    L(e.head, e.tail) -= e.weight;
    L(e.tail, e.tail) += e.weight;
    L(e.head, e.head) += e.weight;
  }
  return L;
}

double tv_norm(const EmpiricalGraph& g, const NodeSignal& u) {
  if (u.size() != g.num_nodes()) {
    throw std::invalid_argument(fmt::format("tv_norm: signal length {} != node count {}", u.size(), g.num_nodes()));
  }
  double tv = 0.0;
  for (const auto& e : g.edges()) tv += e.weight * std::abs(u[e.tail] - u[e.head]);
  return tv;
}

std::vector<std::uint32_t> connected_components(const EmpiricalGraph& g) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.num_nodes(), kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(v)) {
        if (comp[nb.node] == kUnset) {
          comp[nb.node] = next;
          stack.push_back(nb.node);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace flowclust
