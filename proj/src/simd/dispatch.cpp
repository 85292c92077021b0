#include <atomic>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

#include "flowclust/simd/kernels.hpp"

namespace flowclust::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && defined(FLOWCLUST_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("FLOWCLUST_SIMD");
  if (env != nullptr) {
    const std::string choice(env);
    if (choice == "scalar") return Backend::kScalar;
    if (choice == "avx2" && cpu_has_avx2()) return Backend::kAvx2;
  }
  return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

template <class T>
void require_same_size(std::span<T> a, std::size_t n, const char* what) {
  if (a.size() != n) throw std::invalid_argument(std::string("simd kernel: size mismatch in ") + what);
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) { return b == Backend::kScalar || cpu_has_avx2(); }

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("simd backend not available: " + std::string(backend_name(b)));
  }
  backend_slot().store(b, std::memory_order_relaxed);
}

void over_relax(std::span<const double> u, std::span<const double> u_prev, std::span<double> out) {
  require_same_size(u_prev, u.size(), "over_relax");
  require_same_size(out, u.size(), "over_relax");
  if (active_backend() == Backend::kAvx2) {
    avx2::over_relax(u.data(), u_prev.data(), out.data(), u.size());
  } else {
    scalar::over_relax(u.data(), u_prev.data(), out.data(), u.size());
  }
}

void dual_ascent_clip(std::span<const std::uint32_t> tail, std::span<const std::uint32_t> head,
                      std::span<const double> x, std::span<const double> capacity, std::span<double> flow) {
  const std::size_t m = flow.size();
  require_same_size(tail, m, "dual_ascent_clip");
  require_same_size(head, m, "dual_ascent_clip");
  require_same_size(capacity, m, "dual_ascent_clip");
  // The gather instruction takes signed 32-bit indices.
  const bool gather_ok = x.size() <= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max());
  if (active_backend() == Backend::kAvx2 && gather_ok) {
    avx2::dual_ascent_clip(tail.data(), head.data(), x.data(), capacity.data(), flow.data(), m);
  } else {
    scalar::dual_ascent_clip(tail.data(), head.data(), x.data(), capacity.data(), flow.data(), m);
  }
}

double primal_prox(std::span<double> u, std::span<double> u_prev, std::span<const double> divergence,
                   std::span<const double> step, std::span<const double> offset, std::span<const double> denom) {
  const std::size_t n = u.size();
  require_same_size(u_prev, n, "primal_prox");
  require_same_size(divergence, n, "primal_prox");
  require_same_size(step, n, "primal_prox");
  require_same_size(offset, n, "primal_prox");
  require_same_size(denom, n, "primal_prox");
  if (active_backend() == Backend::kAvx2) {
    return avx2::primal_prox(u.data(), u_prev.data(), divergence.data(), step.data(), offset.data(), denom.data(), n);
  }
  return scalar::primal_prox(u.data(), u_prev.data(), divergence.data(), step.data(), offset.data(), denom.data(), n);
}

void squared_distances(std::span<const double> points, std::span<const double> centre, std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t dims = centre.size();
  require_same_size(points, n * dims, "squared_distances");
  if (active_backend() == Backend::kAvx2) {
    avx2::squared_distances(points.data(), centre.data(), dims, out.data(), n);
  } else {
    scalar::squared_distances(points.data(), centre.data(), dims, out.data(), n);
  }
}

void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  require_same_size(y, x.size(), "rotate");
  if (active_backend() == Backend::kAvx2) {
    avx2::rotate(x.data(), y.data(), c, s, x.size());
  } else {
    scalar::rotate(x.data(), y.data(), c, s, x.size());
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(y, x.size(), "dot");
  if (active_backend() == Backend::kAvx2) return avx2::dot(x.data(), y.data(), x.size());
  return scalar::dot(x.data(), y.data(), x.size());
}

}  // namespace flowclust::simd
