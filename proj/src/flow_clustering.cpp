#include "flowclust/flow_clustering.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "flowclust/error.hpp"
#include "flowclust/tv_solver.hpp"

namespace flowclust {

namespace {

void validate(const FlowClusterConfig& cfg) {
  if (cfg.k == 0) throw std::invalid_argument("flow_cluster: k must be >= 1");
  if (cfg.rounds == 0) throw std::invalid_argument("flow_cluster: rounds must be >= 1");
  if (cfg.iterations == 0) throw std::invalid_argument("flow_cluster: iterations must be >= 1");
  if (cfg.forced_seeds && cfg.forced_seeds->empty()) {
    throw std::invalid_argument("flow_cluster: forced seed list is empty");
  }
}

nlohmann::json to_one_based(const std::vector<NodeId>& nodes) {
  auto out = nlohmann::json::array();
  for (NodeId v : nodes) out.push_back(v + 1);
  return out;
}

}  // namespace

std::size_t count_distinct_rows(const Eigen::MatrixXd& m) {
  std::set<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    rows.insert(std::move(row));
  }
  return rows.size();
}

std::vector<std::vector<NodeId>> round_seed_sets(const EmpiricalGraph& g, const FlowClusterConfig& cfg) {
  validate(cfg);
  std::vector<std::vector<NodeId>> sets;
  sets.reserve(cfg.rounds);
  for (std::size_t r = 0; r < cfg.rounds; ++r) {
    if (cfg.forced_seeds) {
      sets.push_back((*cfg.forced_seeds)[r % cfg.forced_seeds->size()]);
    } else {
      SeedParams p = cfg.seed_params;
      p.rng_seed = cfg.seed_params.rng_seed + r;
      sets.push_back(select_seeds(g, p));
    }
  }
  return sets;
}

FlowClusterResult flow_cluster(const EmpiricalGraph& g, const FlowClusterConfig& cfg) {
  validate(cfg);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  FlowClusterResult result;
  result.seed_sets = round_seed_sets(g, cfg);
  result.features.resize(n, static_cast<Eigen::Index>(cfg.rounds));

  // Rounds are independent; each writes only its own column.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.rounds; r = next++) {
      try {
        const TVProblem problem(g, result.seed_sets[r], cfg.lambda, cfg.alpha);
        SolveOptions opts;
        opts.iterations = cfg.iterations;
        const TVSolution sol = solve_tv(problem, opts);
        for (Eigen::Index i = 0; i < n; ++i) result.features(i, static_cast<Eigen::Index>(r)) = sol.u[static_cast<std::size_t>(i)];
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, cfg.rounds);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Eigen::MatrixXd points = result.features;
  if (cfg.normalize_rows) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double norm = points.row(i).norm();
      if (norm > 0.0) points.row(i) /= norm;
    }
  }

  KMeansConfig km = cfg.kmeans;
  km.k = cfg.k;
  if (cfg.k > 1) {
    const std::size_t distinct = count_distinct_rows(points);
    if (distinct < cfg.k) {
      throw DataError(fmt::format("flow_cluster: only {} distinct feature rows for k = {}", distinct, cfg.k));
    }
  }
  const KMeansResult clusters = kmeans(points, km);

  auto seeds_json = nlohmann::json::array();
  for (const auto& s : result.seed_sets) seeds_json.push_back(to_one_based(s));
  result.assignment.labels = clusters.labels;
  result.assignment.provenance = {
      {"method", "flow"},
      {"lambda", cfg.lambda},
      {"alpha", cfg.alpha},
      {"k", cfg.k},
      {"rounds", cfg.rounds},
      {"iterations", cfg.iterations},
      {"seeding",
       cfg.forced_seeds ? nlohmann::json{{"mode", "forced"}}
                        : nlohmann::json{{"mode", "common_neighbors"},
                                         {"eta", cfg.seed_params.eta},
                                         {"min_degree", cfg.seed_params.min_degree},
                                         {"rng_seed", cfg.seed_params.rng_seed}}},
      {"seed_sets", seeds_json},
      {"normalize_rows", cfg.normalize_rows},
      {"kmeans",
       {{"restarts", km.restarts}, {"max_iters", km.max_iters}, {"tol", km.tol}, {"rng_seed", km.rng_seed},
        {"inertia", clusters.inertia}}},
      {"rng_seed", cfg.seed_params.rng_seed},
  };
  return result;
}

}  // namespace flowclust
