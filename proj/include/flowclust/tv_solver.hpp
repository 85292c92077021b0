#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "flowclust/graph.hpp"

namespace flowclust {

/// Seed-anchored TV minimisation
///
///   minimise  sum_{i in S} (1 - u_i)^2 / 2 + sum_{i not in S} (alpha / 2) u_i^2 + lambda * ||u||_TV
///
/// over node signals u. Holds a non-owning reference to the graph, which must
/// outlive the problem.
class TVProblem {
 public:
  /// Throws std::invalid_argument if seeds are empty, out of range or
  /// duplicated, or if lambda or alpha is not positive.
  TVProblem(const EmpiricalGraph& graph, std::vector<NodeId> seeds, double lambda, double alpha);

  const EmpiricalGraph& graph() const { return *graph_; }
  std::span<const NodeId> seeds() const { return seeds_; }
  bool is_seed(NodeId i) const { return seed_mask_[i] != 0; }
  double lambda() const { return lambda_; }
  double alpha() const { return alpha_; }

  /// Objective value at u.
  double objective(const NodeSignal& u) const;

 private:
  const EmpiricalGraph* graph_;
  std::vector<NodeId> seeds_;
  std::vector<char> seed_mask_;
  double lambda_;
  double alpha_;
};

struct SolveOptions {
  std::size_t iterations = 1000;
  /// Per-node primal step sizes; default 1 / max(1, unweighted degree).
  std::optional<std::vector<double>> step_sizes;
  /// Stop early once max |u^(r+1) - u^(r)| < rtol. Zero disables early stopping.
  double rtol = 0.0;
};

struct TVSolution {
  NodeSignal u;
  FlowVector flow;
  std::size_t iterations_run = 0;
  /// max |u^(r+1) - u^(r)| of the last iteration.
  double residual = 0.0;
};

/// Default primal step sizes 1 / max(1, deg(i)) with deg the incident edge count.
std::vector<double> default_step_sizes(const EmpiricalGraph& g);

/// Primal-dual network-flow iteration. Starting from u = 0, flow = 0, each
/// iteration
///   1. over-relaxes the primal point, x = 2 u^(r) - u^(r-1),
///   2. moves every edge flow by (x_tail - x_head) / 2 and clips it to the
///      capacity lambda * A_e,
///   3. updates u_i -= step_i * (outflow_i - inflow_i),
///   4. injects flow at seeds, u_i = (step_i + u_i) / (step_i + 1), and leaks
///      it elsewhere, u_i = u_i / (alpha * step_i + 1).
/// Edges whose capacity underflows to zero carry no flow. Bit-identical
/// results for identical inputs regardless of SIMD backend.
///
/// Throws std::invalid_argument if iterations == 0 or a step size is not
/// positive and finite, or the step vector has the wrong length.
TVSolution solve_tv(const TVProblem& problem, const SolveOptions& options = {});

/// Maximum violation of each optimality condition of the flow
/// characterisation of TV minimisers.
struct CertificateReport {
  /// max over seeds of |net_inflow_i - (u_i - 1)|
  double seed_balance_violation = 0.0;
  /// max over non-seeds of |net_inflow_i - alpha u_i|
  double nonseed_balance_violation = 0.0;
  /// max over edges of max(0, |h_e| - lambda A_e)
  double capacity_violation = 0.0;
  /// max over edges with |h_e| < lambda A_e - tol of |u_tail - u_head|
  double saturation_consistency = 0.0;

  double max_violation() const;
  bool accepted(double tol) const { return max_violation() <= tol; }
};

/// Net inflow per node: sum of flows on edges entering minus leaving.
std::vector<double> net_inflow(const OrientedGraph& og, const FlowVector& flow);

/// Throws std::invalid_argument on dimension mismatch or negative tol.
CertificateReport check_certificate(const TVProblem& problem, const NodeSignal& u, const FlowVector& flow, double tol);
CertificateReport check_certificate(const TVProblem& problem, const TVSolution& sol, double tol);

struct ChainSpec {
  std::size_t size1 = 10;
  std::size_t size2 = 10;
  double boundary_weight = 0.1;
  double lambda = 0.1;
  double alpha = 0.005;
  bool seed_in_first = true;
};

/// Piecewise-constant minimiser for a two-cluster chain with a single seed,
/// valid when lambda A_o < 1, |C_s|(alpha / lambda) + A_o < 1 and
/// |C_o| alpha >= lambda A_o (C_s the seed cluster, C_o the other one).
/// Nodes 0..size1-1 form the first cluster.
///
/// Throws std::invalid_argument naming the first violated inequality.
NodeSignal chain_closed_form(const ChainSpec& spec);

}  // namespace flowclust
