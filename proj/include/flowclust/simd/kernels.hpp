#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant chosen at runtime.
//
// Every kernel is written so both variants perform the same IEEE operations
// in the same order per output element (no reductions across lanes, no FMA
// contraction), which makes the variants bit-identical. The equivalence tests
// check this with exact comparison.

#include <cstdint>
#include <span>
#include <string_view>

namespace flowclust::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend b);

/// True when the running CPU and the build both support the backend.
bool backend_available(Backend b);

/// Backend used by the dispatching entry points below. Defaults to the best
/// available one; the environment variable FLOWCLUST_SIMD=scalar|avx2 overrides
/// it at first use.
Backend active_backend();

/// Forces a backend (tests, benchmarks). Throws std::invalid_argument if the
/// backend is not available.
void set_backend(Backend b);

/// out[i] = 2 * u[i] - u_prev[i]
void over_relax(std::span<const double> u, std::span<const double> u_prev, std::span<double> out);

/// For each edge e: flow[e] += 0.5 * (x[tail[e]] - x[head[e]]), then
/// flow[e] /= max(1, |flow[e]| / capacity[e]). capacity must be positive.
void dual_ascent_clip(std::span<const std::uint32_t> tail, std::span<const std::uint32_t> head,
                      std::span<const double> x, std::span<const double> capacity, std::span<double> flow);

/// For each node: v = u[i] - step[i] * divergence[i];
/// u[i] = (v + offset[i]) / denom[i]; the previous u[i] goes to u_prev[i].
/// Returns max |u_new - u_old|.
double primal_prox(std::span<double> u, std::span<double> u_prev, std::span<const double> divergence,
                   std::span<const double> step, std::span<const double> offset, std::span<const double> denom);

/// Squared Euclidean distance of every point to one centre. Points are stored
/// dimension-major: coordinate d of point p is points[d * n + p], n = out.size().
/// Coordinates are accumulated in order d = 0, 1, ...
void squared_distances(std::span<const double> points, std::span<const double> centre, std::span<double> out);

/// Plane rotation of two vectors: x' = c x - s y, y' = s x + c y.
void rotate(std::span<double> x, std::span<double> y, double c, double s);

/// Dot product with four interleaved partial sums (element i goes to lane
/// i mod 4), combined as (l0 + l1) + (l2 + l3).
double dot(std::span<const double> x, std::span<const double> y);

namespace scalar {
void over_relax(const double* u, const double* u_prev, double* out, std::size_t n);
void dual_ascent_clip(const std::uint32_t* tail, const std::uint32_t* head, const double* x, const double* capacity,
                      double* flow, std::size_t m);
double primal_prox(double* u, double* u_prev, const double* divergence, const double* step, const double* offset,
                   const double* denom, std::size_t n);
void squared_distances(const double* points, const double* centre, std::size_t dims, double* out, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
void over_relax(const double* u, const double* u_prev, double* out, std::size_t n);
void dual_ascent_clip(const std::uint32_t* tail, const std::uint32_t* head, const double* x, const double* capacity,
                      double* flow, std::size_t m);
double primal_prox(double* u, double* u_prev, const double* divergence, const double* step, const double* offset,
                   const double* denom, std::size_t n);
void squared_distances(const double* points, const double* centre, std::size_t dims, double* out, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace avx2

}  // namespace flowclust::simd
