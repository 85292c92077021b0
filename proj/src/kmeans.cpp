#include "flowclust/kmeans.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include <fmt/format.h>

#include "flowclust/random.hpp"
#include "flowclust/simd/kernels.hpp"

namespace flowclust {

namespace {

struct LloydRun {
  std::vector<int> assignment;  // 0-based
  Eigen::MatrixXd centroids;
  double inertia = 0.0;
};

class Assigner {
 public:
  explicit Assigner(const Eigen::MatrixXd& points)
      : points_(points), n_(static_cast<std::size_t>(points.rows())), dist_(n_) {}

  // Nearest centroid per point (lower index on ties); fills best distances.
  void assign(const Eigen::MatrixXd& centroids, std::vector<int>& assignment, std::vector<double>& best) {
    const auto d = static_cast<std::size_t>(points_.cols());
    best.assign(n_, std::numeric_limits<double>::infinity());
    assignment.assign(n_, 0);
    std::vector<double> centre(d);
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      for (std::size_t j = 0; j < d; ++j) centre[j] = centroids(c, static_cast<Eigen::Index>(j));
      distances_to(centre, dist_);
      for (std::size_t p = 0; p < n_; ++p) {
        if (dist_[p] < best[p]) {
          best[p] = dist_[p];
          assignment[p] = static_cast<int>(c);
        }
      }
    }
  }

  void distances_to(std::span<const double> centre, std::vector<double>& out) {
    out.resize(n_);
    simd::squared_distances({points_.data(), static_cast<std::size_t>(points_.size())}, centre, out);
  }

 private:
  const Eigen::MatrixXd& points_;
  std::size_t n_;
  std::vector<double> dist_;
};

Eigen::MatrixXd plus_plus_init(const Eigen::MatrixXd& points, std::size_t k, Rng& rng, Assigner& assigner) {
  const auto n = static_cast<std::size_t>(points.rows());
  Eigen::MatrixXd centroids(static_cast<Eigen::Index>(k), points.cols());
  std::size_t first = rng.uniform_index(n);
  centroids.row(0) = points.row(static_cast<Eigen::Index>(first));

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<double> dist;
  std::vector<double> centre(static_cast<std::size_t>(points.cols()));
  for (std::size_t c = 1; c < k; ++c) {
    for (std::size_t j = 0; j < centre.size(); ++j) centre[j] = centroids(static_cast<Eigen::Index>(c - 1), static_cast<Eigen::Index>(j));
    assigner.distances_to(centre, dist);
    double total = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      nearest[p] = std::min(nearest[p], dist[p]);
      total += nearest[p];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform01() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t p = 0; p < n; ++p) {
        acc += nearest[p];
        if (acc > target && nearest[p] > 0.0) {
          pick = p;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(n);
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
  }
  return centroids;
}

LloydRun lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, const KMeansConfig& cfg, Assigner& assigner) {
  const auto n = static_cast<std::size_t>(points.rows());
  const Eigen::Index k = centroids.rows();
  LloydRun run;
  std::vector<double> best;
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(k));

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    assigner.assign(centroids, run.assignment, best);

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t p = 0; p < n; ++p) {
      sums.row(run.assignment[p]) += points.row(static_cast<Eigen::Index>(p));
      ++counts[static_cast<std::size_t>(run.assignment[p])];
    }
    Eigen::MatrixXd next = centroids;
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) {
        // Reseed an empty cluster at the point farthest from its centroid.
        std::size_t far = 0;
        for (std::size_t p = 1; p < n; ++p) {
          if (best[p] > best[far]) far = p;
        }
        next.row(c) = points.row(static_cast<Eigen::Index>(far));
        best[far] = 0.0;
      } else {
        next.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    double shift = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) shift = std::max(shift, (next.row(c) - centroids.row(c)).norm());
    centroids = std::move(next);
    if (shift < cfg.tol) break;
  }

  assigner.assign(centroids, run.assignment, best);
  for (double b : best) run.inertia += b;
  run.centroids = std::move(centroids);
  return run;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansConfig& cfg) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (cfg.k == 0) throw std::invalid_argument("kmeans: k must be >= 1");
  if (n == 0) throw std::invalid_argument("kmeans: no points");
  if (cfg.k > n) throw std::invalid_argument(fmt::format("kmeans: k = {} exceeds point count {}", cfg.k, n));
  if (cfg.restarts == 0 || cfg.max_iters == 0 || !(cfg.tol >= 0.0)) {
    throw std::invalid_argument("kmeans: restarts and max_iters must be >= 1 and tol >= 0");
  }
  if (!points.allFinite()) throw std::invalid_argument("kmeans: points must be finite");

  Assigner assigner(points);
  KMeansResult result;
  LloydRun best_run;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    Rng rng(cfg.rng_seed + r);
    LloydRun run = lloyd(points, plus_plus_init(points, cfg.k, rng, assigner), cfg, assigner);
    result.restart_inertias.push_back(run.inertia);
    if (r == 0 || run.inertia < best_run.inertia) {
      best_run = std::move(run);
      result.best_restart = r;
    }
  }
  result.inertia = best_run.inertia;
  result.centroids = std::move(best_run.centroids);
  result.labels.reserve(n);
  for (int a : best_run.assignment) result.labels.push_back(a + 1);
  return result;
}

}  // namespace flowclust
