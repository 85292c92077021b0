#include "flowclust/tv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "flowclust/simd/kernels.hpp"

namespace flowclust {

TVProblem::TVProblem(const EmpiricalGraph& graph, std::vector<NodeId> seeds, double lambda, double alpha)
    : graph_(&graph), seeds_(std::move(seeds)), seed_mask_(graph.num_nodes(), 0), lambda_(lambda), alpha_(alpha) {
  if (seeds_.empty()) throw std::invalid_argument("TVProblem: seed set is empty");
  for (NodeId s : seeds_) {
    if (s >= graph.num_nodes()) {
      throw std::invalid_argument(fmt::format("TVProblem: seed {} out of range 1..{}", s + 1, graph.num_nodes()));
    }
    if (seed_mask_[s]) throw std::invalid_argument(fmt::format("TVProblem: duplicate seed {}", s + 1));
    seed_mask_[s] = 1;
  }
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw std::invalid_argument("TVProblem: lambda must be positive");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw std::invalid_argument("TVProblem: alpha must be positive");
}

double TVProblem::objective(const NodeSignal& u) const {
  double f = 0.0;
  for (NodeId i = 0; i < graph_->num_nodes(); ++i) {
    f += is_seed(i) ? 0.5 * (1.0 - u[i]) * (1.0 - u[i]) : 0.5 * alpha_ * u[i] * u[i];
  }
  return f + lambda_ * tv_norm(*graph_, u);
}

std::vector<double> default_step_sizes(const EmpiricalGraph& g) {
  std::vector<double> step(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    step[i] = 1.0 / std::max<double>(1.0, static_cast<double>(g.degree(i)));
  }
  return step;
}

namespace {

// Active edges (positive capacity) in structure-of-arrays form, with a
// per-node incidence list in edge order split into outgoing and incoming.
struct SolverLayout {
  std::vector<EdgeId> edge_of;  // active index -> original edge id
  std::vector<std::uint32_t> tail;
  std::vector<std::uint32_t> head;
  std::vector<double> capacity;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> incident;  // active edge indices
  std::vector<char> outgoing;           // 1 if the node is the tail

  SolverLayout(const OrientedGraph& og, double lambda) {
    const std::size_t n = og.num_nodes();
    std::vector<std::size_t> counts(n, 0);
    for (EdgeId e = 0; e < og.num_edges(); ++e) {
      const double cap = lambda * og.weights()[e];
      if (!(cap > 0.0)) continue;
      edge_of.push_back(e);
      tail.push_back(og.tails()[e]);
      head.push_back(og.heads()[e]);
      capacity.push_back(cap);
      ++counts[og.tails()[e]];
      ++counts[og.heads()[e]];
    }
    offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + counts[i];
    incident.resize(offsets[n]);
    outgoing.resize(offsets[n]);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t a = 0; a < edge_of.size(); ++a) {
      incident[fill[tail[a]]] = a;
      outgoing[fill[tail[a]]++] = 1;
      incident[fill[head[a]]] = a;
      outgoing[fill[head[a]]++] = 0;
    }
  }

  // divergence_i = (sum of outgoing flow) - (sum of incoming flow)
  void divergence(const std::vector<double>& flow, std::vector<double>& out) const {
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      double outflow = 0.0;
      double inflow = 0.0;
      for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
        if (outgoing[k]) {
          outflow += flow[incident[k]];
        } else {
          inflow += flow[incident[k]];
        }
      }
      out[i] = outflow - inflow;
    }
  }
};

}  // namespace

TVSolution solve_tv(const TVProblem& problem, const SolveOptions& options) {
  const EmpiricalGraph& g = problem.graph();
  const std::size_t n = g.num_nodes();
  if (options.iterations == 0) throw std::invalid_argument("solve_tv: iteration count must be >= 1");

  std::vector<double> step = options.step_sizes ? *options.step_sizes : default_step_sizes(g);
  if (step.size() != n) {
    throw std::invalid_argument(fmt::format("solve_tv: {} step sizes for {} nodes", step.size(), n));
  }
  for (double s : step) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("solve_tv: step sizes must be positive");
  }

  const OrientedGraph og(g);
  const SolverLayout layout(og, problem.lambda());

  // Seed injection and non-seed leakage share the form (v + offset) / denom.
  std::vector<double> offset(n), denom(n);
  for (NodeId i = 0; i < n; ++i) {
    if (problem.is_seed(i)) {
      offset[i] = step[i];
      denom[i] = step[i] + 1.0;
    } else {
      offset[i] = 0.0;
      denom[i] = problem.alpha() * step[i] + 1.0;
    }
  }

  std::vector<double> u(n, 0.0), u_prev(n, 0.0), x(n, 0.0), div(n, 0.0);
  std::vector<double> flow(layout.edge_of.size(), 0.0);

  TVSolution sol;
  for (std::size_t r = 0; r < options.iterations; ++r) {
    simd::over_relax(u, u_prev, x);
    simd::dual_ascent_clip(layout.tail, layout.head, x, layout.capacity, flow);
    layout.divergence(flow, div);
    sol.residual = simd::primal_prox(u, u_prev, div, step, offset, denom);
    sol.iterations_run = r + 1;
    if (options.rtol > 0.0 && sol.residual < options.rtol) break;
  }

  sol.u = NodeSignal(std::move(u));
  sol.flow = FlowVector(g.num_edges(), 0.0);
  for (std::size_t a = 0; a < layout.edge_of.size(); ++a) sol.flow[layout.edge_of[a]] = flow[a];
  return sol;
}

double CertificateReport::max_violation() const {
  return std::max({seed_balance_violation, nonseed_balance_violation, capacity_violation, saturation_consistency});
}

std::vector<double> net_inflow(const OrientedGraph& og, const FlowVector& flow) {
  std::vector<double> inflow(og.num_nodes(), 0.0), outflow(og.num_nodes(), 0.0);
  for (EdgeId e = 0; e < og.num_edges(); ++e) {
    outflow[og.tails()[e]] += flow[e];
    inflow[og.heads()[e]] += flow[e];
  }
  for (std::size_t i = 0; i < inflow.size(); ++i) inflow[i] -= outflow[i];
  return inflow;
}

CertificateReport check_certificate(const TVProblem& problem, const NodeSignal& u, const FlowVector& flow, double tol) {
  const EmpiricalGraph& g = problem.graph();
  if (u.size() != g.num_nodes() || flow.size() != g.num_edges()) {
    throw std::invalid_argument(fmt::format("check_certificate: got {} node values / {} flows for graph with {} / {}",
                                            u.size(), flow.size(), g.num_nodes(), g.num_edges()));
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("check_certificate: tol must be nonnegative");

  const OrientedGraph og(g);
  const auto inflow = net_inflow(og, flow);
  CertificateReport rep;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (problem.is_seed(i)) {
      rep.seed_balance_violation = std::max(rep.seed_balance_violation, std::abs(inflow[i] - (u[i] - 1.0)));
    } else {
      rep.nonseed_balance_violation =
          std::max(rep.nonseed_balance_violation, std::abs(inflow[i] - problem.alpha() * u[i]));
    }
  }
  for (EdgeId e = 0; e < og.num_edges(); ++e) {
    const double cap = problem.lambda() * og.weights()[e];
    const double mag = std::abs(flow[e]);
    rep.capacity_violation = std::max(rep.capacity_violation, mag - cap);
    if (mag < cap - tol) {
      rep.saturation_consistency =
          std::max(rep.saturation_consistency, std::abs(u[og.tails()[e]] - u[og.heads()[e]]));
    }
  }
  return rep;
}

CertificateReport check_certificate(const TVProblem& problem, const TVSolution& sol, double tol) {
  return check_certificate(problem, sol.u, sol.flow, tol);
}

NodeSignal chain_closed_form(const ChainSpec& spec) {
  if (spec.size1 == 0 || spec.size2 == 0) throw std::invalid_argument("chain_closed_form: cluster sizes must be >= 1");
  if (!(spec.lambda > 0.0) || !(spec.alpha > 0.0) || !(spec.boundary_weight > 0.0)) {
    throw std::invalid_argument("chain_closed_form: lambda, alpha and A_o must be positive");
  }
  const double seed_size = static_cast<double>(spec.seed_in_first ? spec.size1 : spec.size2);
  const double other_size = static_cast<double>(spec.seed_in_first ? spec.size2 : spec.size1);
  const double lam = spec.lambda;
  const double alpha = spec.alpha;
  const double a_o = spec.boundary_weight;

  if (!(lam * a_o < 1.0)) {
    throw std::invalid_argument(fmt::format("chain_closed_form: infeasible, lambda*A_o < 1 fails ({} >= 1)", lam * a_o));
  }
  if (!(seed_size * (alpha / lam) + a_o < 1.0)) {
    throw std::invalid_argument(fmt::format("chain_closed_form: infeasible, |C_seed|*(alpha/lambda) + A_o < 1 fails ({} >= 1)",
                                            seed_size * (alpha / lam) + a_o));
  }
  if (!(other_size * alpha >= lam * a_o)) {
    throw std::invalid_argument(fmt::format("chain_closed_form: infeasible, |C_other|*alpha >= lambda*A_o fails ({} < {})",
                                            other_size * alpha, lam * a_o));
  }

  const double seed_value = (1.0 - lam * a_o) / (1.0 + alpha * (seed_size - 1.0));
  const double other_value = lam * a_o / (alpha * other_size);
  NodeSignal u(spec.size1 + spec.size2);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool first = i < spec.size1;
    u[i] = (first == spec.seed_in_first) ? seed_value : other_value;
  }
  return u;
}

}  // namespace flowclust
