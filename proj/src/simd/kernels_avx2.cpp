// Compiled with -mavx2 (and without -mfma); only called after a runtime CPU check.

#include "flowclust/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace flowclust::simd::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

}  // namespace

void over_relax(const double* u, const double* u_prev, double* out, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(u + i);
    const __m256d b = _mm256_loadu_pd(u_prev + i);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_mul_pd(two, a), b));
  }
  scalar::over_relax(u + i, u_prev + i, out + i, n - i);
}

void dual_ascent_clip(const std::uint32_t* tail, const std::uint32_t* head, const double* x, const double* capacity,
                      double* flow, std::size_t m) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t e = 0;
  for (; e + 4 <= m; e += 4) {
    const __m128i ti = _mm_loadu_si128(reinterpret_cast<const __m128i*>(tail + e));
    const __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(head + e));
    const __m256d xt = _mm256_i32gather_pd(x, ti, 8);
    const __m256d xh = _mm256_i32gather_pd(x, hi, 8);
    __m256d h = _mm256_add_pd(_mm256_loadu_pd(flow + e), _mm256_mul_pd(half, _mm256_sub_pd(xt, xh)));
    const __m256d ratio = _mm256_div_pd(abs_pd(h), _mm256_loadu_pd(capacity + e));
    h = _mm256_div_pd(h, _mm256_max_pd(ratio, one));
    _mm256_storeu_pd(flow + e, h);
  }
  scalar::dual_ascent_clip(tail + e, head + e, x, capacity + e, flow + e, m - e);
}

double primal_prox(double* u, double* u_prev, const double* divergence, const double* step, const double* offset,
                   const double* denom, std::size_t n) {
  __m256d res = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d old = _mm256_loadu_pd(u + i);
    const __m256d v = _mm256_sub_pd(old, _mm256_mul_pd(_mm256_loadu_pd(step + i), _mm256_loadu_pd(divergence + i)));
    const __m256d next = _mm256_div_pd(_mm256_add_pd(v, _mm256_loadu_pd(offset + i)), _mm256_loadu_pd(denom + i));
    _mm256_storeu_pd(u_prev + i, old);
    _mm256_storeu_pd(u + i, next);
    res = _mm256_max_pd(res, abs_pd(_mm256_sub_pd(next, old)));
  }
  const double tail_res = scalar::primal_prox(u + i, u_prev + i, divergence + i, step + i, offset + i, denom + i, n - i);
  return std::max(hmax(res), tail_res);
}

void squared_distances(const double* points, const double* centre, std::size_t dims, double* out, std::size_t n) {
  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dims; ++d) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(points + d * n + p), _mm256_set1_pd(centre[d]));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    _mm256_storeu_pd(out + p, acc);
  }
  for (; p < n; ++p) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      const double diff = points[d * n + p] - centre[d];
      acc = acc + diff * diff;
    }
    out[p] = acc;
  }
}

void rotate(double* x, double* y, double c, double s, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, a), _mm256_mul_pd(vs, b)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, a), _mm256_mul_pd(vc, b)));
  }
  scalar::rotate(x + i, y + i, c, s, n - i);
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; i < n; ++i) lane[i % 4] = lane[i % 4] + x[i] * y[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace flowclust::simd::avx2

#else

#include <stdexcept>

namespace flowclust::simd::avx2 {

[[noreturn]] static void unavailable() { throw std::logic_error("AVX2 kernels not compiled in"); }

void over_relax(const double*, const double*, double*, std::size_t) { unavailable(); }
void dual_ascent_clip(const std::uint32_t*, const std::uint32_t*, const double*, const double*, double*, std::size_t) {
  unavailable();
}
double primal_prox(double*, double*, const double*, const double*, const double*, const double*, std::size_t) {
  unavailable();
}
void squared_distances(const double*, const double*, std::size_t, double*, std::size_t) { unavailable(); }
void rotate(double*, double*, double, double, std::size_t) { unavailable(); }
double dot(const double*, const double*, std::size_t) { unavailable(); }

}  // namespace flowclust::simd::avx2

#endif
