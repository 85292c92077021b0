#include "flowclust/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>

#include <fmt/format.h>

#include "flowclust/error.hpp"
#include "flowclust/simd/kernels.hpp"

namespace flowclust {

const char* laplacian_kind_name(LaplacianKind kind) {
  return kind == LaplacianKind::kUnnormalized ? "unnormalized" : "symmetric_normalized";
}

namespace {

std::span<double> column(Eigen::MatrixXd& m, Eigen::Index j) {
  return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

}  // namespace

EigenPairs jacobi_eigen_psd(const Eigen::MatrixXd& a, std::size_t max_sweeps) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi_eigen_psd: matrix must be square");
  const Eigen::Index n = a.rows();
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  // Rotate column pairs of U = A until they are mutually orthogonal; then
  // A V = U with V orthogonal, and for PSD A the column norms of U are the
  // eigenvalues with V's columns as eigenvectors.
  Eigen::MatrixXd u = a;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> norm2(static_cast<std::size_t>(n));

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < n; ++j) {
      auto cj = column(u, j);
      norm2[static_cast<std::size_t>(j)] = simd::dot(cj, cj);
    }
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        double& alpha = norm2[static_cast<std::size_t>(p)];
        double& beta = norm2[static_cast<std::size_t>(q)];
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = simd::dot(column(u, p), column(u, q));
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        simd::rotate(column(u, p), column(u, q), c, s);
        simd::rotate(column(v, p), column(v, q), c, s);
        alpha -= t * gamma;
        beta += t * gamma;
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) values[static_cast<std::size_t>(j)] = u.col(j).norm();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return values[static_cast<std::size_t>(x)] < values[static_cast<std::size_t>(y)];
  });

  EigenPairs out;
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.values.push_back(values[static_cast<std::size_t>(src)]);
    Eigen::VectorXd vec = v.col(src);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(vec(i)) > std::abs(vec(arg))) arg = i;
    }
    if (n > 0 && vec(arg) < 0.0) vec = -vec;
    out.vectors.col(j) = vec;
  }
  return out;
}

Eigen::MatrixXd normalized_laplacian(const EmpiricalGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = weighted_degree(g, static_cast<NodeId>(i));
    inv_sqrt(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) l(i, i) = inv_sqrt(i) > 0.0 ? 1.0 : 0.0;
  for (const auto& e : g.edges()) {
    const double w = e.weight * inv_sqrt(e.tail) * inv_sqrt(e.head);
    l(e.tail, e.head) -= w;
    l(e.head, e.tail) -= w;
  }
  return l;
}

EigenPairs eig_laplacian(const EmpiricalGraph& g, std::size_t k, LaplacianKind kind) {
  const std::size_t n = g.num_nodes();
  if (k == 0 || k > n) throw std::invalid_argument(fmt::format("eig_laplacian: k = {} outside 1..{}", k, n));
  if (n > kMaxSpectralNodes) {
    throw DataError(fmt::format("eig_laplacian: {} nodes exceeds the dense solver limit of {}", n, kMaxSpectralNodes));
  }
  const Eigen::MatrixXd l = kind == LaplacianKind::kUnnormalized ? laplacian(g) : normalized_laplacian(g);
  EigenPairs full = jacobi_eigen_psd(l);
  full.values.resize(k);
  full.vectors.conservativeResize(Eigen::NoChange, static_cast<Eigen::Index>(k));
  return full;
}

Eigen::MatrixXd spectral_features(const EigenPairs& pairs, LaplacianKind kind) {
  Eigen::MatrixXd features = pairs.vectors;
  if (kind == LaplacianKind::kSymmetricNormalized) {
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      const double norm = features.row(i).norm();
      if (norm > 0.0) features.row(i) /= norm;
    }
  }
  return features;
}

ClusterAssignment spectral_cluster(const EmpiricalGraph& g, std::size_t k, const KMeansConfig& cfg,
                                   LaplacianKind kind, Eigen::MatrixXd* features) {
  const EigenPairs pairs = eig_laplacian(g, k, kind);
  KMeansConfig km = cfg;
  km.k = k;
  Eigen::MatrixXd f = spectral_features(pairs, kind);
  const KMeansResult result = kmeans(f, km);
  if (features != nullptr) *features = std::move(f);

  ClusterAssignment out;
  out.labels = result.labels;
  out.provenance = {
      {"method", "spectral"},
      {"laplacian", laplacian_kind_name(kind)},
      {"k", k},
      {"eigenvalues", pairs.values},
      {"kmeans",
       {{"restarts", km.restarts}, {"max_iters", km.max_iters}, {"tol", km.tol}, {"rng_seed", km.rng_seed},
        {"inertia", result.inertia}}},
      {"rng_seed", km.rng_seed},
  };
  return out;
}

}  // namespace flowclust
