#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "flowclust/clustering.hpp"
#include "flowclust/graph.hpp"
#include "flowclust/kmeans.hpp"

namespace flowclust {

/// Largest graph the dense eigensolver accepts.
inline constexpr std::size_t kMaxSpectralNodes = 5000;

enum class LaplacianKind {
  /// L = D - A; features are the raw eigenvector entries.
  kUnnormalized,
  /// L_sym = I - D^{-1/2} A D^{-1/2}; feature rows normalised to unit length
  /// before k-means (Ng, Jordan and Weiss).
  kSymmetricNormalized,
};

const char* laplacian_kind_name(LaplacianKind kind);

/// Eigenvalues in ascending order with orthonormal eigenvectors as the
/// matching columns of `vectors`. Each eigenvector's largest-magnitude entry
/// (first one on ties) is positive.
struct EigenPairs {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};

/// Full eigendecomposition of a symmetric positive semi-definite matrix by
/// one-sided cyclic Jacobi rotations. Sweeps until no pair of columns is
/// non-orthogonal beyond machine precision (at most max_sweeps).
EigenPairs jacobi_eigen_psd(const Eigen::MatrixXd& a, std::size_t max_sweeps = 60);

Eigen::MatrixXd normalized_laplacian(const EmpiricalGraph& g);

/// The k smallest eigenpairs of the graph Laplacian.
/// Throws std::invalid_argument if k is outside 1..n, DataError if n exceeds
/// kMaxSpectralNodes.
EigenPairs eig_laplacian(const EmpiricalGraph& g, std::size_t k,
                         LaplacianKind kind = LaplacianKind::kUnnormalized);

/// Features from the first k eigenvectors, then k-means with k clusters
/// (cfg.k is overridden by k). Provenance records the eigenvalues. The
/// feature matrix is copied to *features when given.
ClusterAssignment spectral_cluster(const EmpiricalGraph& g, std::size_t k, const KMeansConfig& cfg,
                                   LaplacianKind kind = LaplacianKind::kUnnormalized,
                                   Eigen::MatrixXd* features = nullptr);

/// The n x k feature matrix spectral_cluster feeds to k-means.
Eigen::MatrixXd spectral_features(const EigenPairs& pairs, LaplacianKind kind);

}  // namespace flowclust
