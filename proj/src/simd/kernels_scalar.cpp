#include <algorithm>
#include <cmath>

#include "flowclust/simd/kernels.hpp"

namespace flowclust::simd::scalar {

void over_relax(const double* u, const double* u_prev, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * u[i] - u_prev[i];
}

void dual_ascent_clip(const std::uint32_t* tail, const std::uint32_t* head, const double* x, const double* capacity,
                      double* flow, std::size_t m) {
  for (std::size_t e = 0; e < m; ++e) {
    const double h = flow[e] + 0.5 * (x[tail[e]] - x[head[e]]);
    flow[e] = h / std::max(1.0, std::fabs(h) / capacity[e]);
  }
}

double primal_prox(double* u, double* u_prev, const double* divergence, const double* step, const double* offset,
                   const double* denom, std::size_t n) {
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double old = u[i];
    const double v = old - step[i] * divergence[i];
    const double next = (v + offset[i]) / denom[i];
    u_prev[i] = old;
    u[i] = next;
    residual = std::max(residual, std::fabs(next - old));
  }
  return residual;
}

void squared_distances(const double* points, const double* centre, std::size_t dims, double* out, std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) out[p] = 0.0;
  for (std::size_t d = 0; d < dims; ++d) {
    const double* col = points + d * n;
    const double c = centre[d];
    for (std::size_t p = 0; p < n; ++p) {
      const double diff = col[p] - c;
      out[p] = out[p] + diff * diff;
    }
  }
}

void rotate(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x[i];
    const double b = y[i];
    x[i] = c * a - s * b;
    y[i] = s * a + c * b;
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) lane[i % 4] = lane[i % 4] + x[i] * y[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace flowclust::simd::scalar
