#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace flowclust {

/// Internal node index, 0-based. External formats are 1-based; conversion
/// happens only in the readers and writers.
using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge stored in canonical orientation: tail < head.
struct Edge {
  NodeId tail;
  NodeId head;
  double weight;
};

/// Real value per node.
struct NodeSignal {
  std::vector<double> values;

  NodeSignal() = default;
  explicit NodeSignal(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit NodeSignal(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool all_finite() const;
};

/// Real value per directed edge of an OrientedGraph, indexed by EdgeId.
struct FlowVector {
  std::vector<double> values;

  FlowVector() = default;
  explicit FlowVector(std::size_t m, double fill = 0.0) : values(m, fill) {}
  explicit FlowVector(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t e) const { return values[e]; }
  double& operator[](std::size_t e) { return values[e]; }
  bool all_finite() const;
};

/// Undirected weighted graph without self-loops or parallel edges.
///
/// Edges keep their input order and are stored canonically (tail < head), so
/// the edge array doubles as the directed edge set of the oriented graph.
/// Adjacency is a CSR neighbour list sorted by neighbour id; each entry also
/// carries the id of the edge it came from. Immutable after construction.
class EmpiricalGraph {
 public:
  struct Neighbor {
    NodeId node;
    EdgeId edge;
  };

  EmpiricalGraph() = default;

  /// Validates and builds the graph. Endpoints may be given in either order.
  /// Throws DataError on self-loops, duplicate edges, out-of-range endpoints,
  /// or weights that are not finite and strictly positive.
  EmpiricalGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Neighbor> neighbors(NodeId i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  bool has_edge(NodeId a, NodeId b) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Oriented version of an EmpiricalGraph: one directed edge tail -> head per
/// undirected edge, with tail = min and head = max endpoint.
///
/// Stores structure-of-arrays copies of the edge endpoints and weights plus a
/// node -> incident-edge incidence list with the sign of the incidence (+1 if
/// the node is the tail, -1 if it is the head), in increasing edge id.
class OrientedGraph {
 public:
  struct Incidence {
    EdgeId edge;
    double sign;
  };

  explicit OrientedGraph(const EmpiricalGraph& g);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return tails_.size(); }
  std::span<const NodeId> tails() const { return tails_; }
  std::span<const NodeId> heads() const { return heads_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const Incidence> incident(NodeId i) const {
    return {incidence_.data() + offsets_[i], incidence_.data() + offsets_[i + 1]};
  }

 private:
  std::size_t n_ = 0;
  std::vector<NodeId> tails_;
  std::vector<NodeId> heads_;
  std::vector<double> weights_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidence_;
};

OrientedGraph orient(const EmpiricalGraph& g);

/// Sum of incident edge weights. Throws std::out_of_range for a bad index.
double weighted_degree(const EmpiricalGraph& g, NodeId i);

/// Dense L = D - A.
Eigen::MatrixXd laplacian(const EmpiricalGraph& g);

/// Sum over edges of A_e |u_tail - u_head|. Throws std::invalid_argument on a
/// length mismatch.
double tv_norm(const EmpiricalGraph& g, const NodeSignal& u);

/// Connected component id per node, numbered 0.. in order of first node.
std::vector<std::uint32_t> connected_components(const EmpiricalGraph& g);

}  // namespace flowclust
