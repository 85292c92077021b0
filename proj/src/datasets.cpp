#include "flowclust/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "flowclust/random.hpp"

namespace flowclust {

LabeledGraph gen_chain(std::size_t size1, std::size_t size2, double intra_weight, double boundary_weight) {
  if (size1 == 0 || size2 == 0) throw std::invalid_argument("gen_chain: cluster sizes must be >= 1");
  const std::size_t n = size1 + size2;
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (NodeId i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1, i + 1 == size1 ? boundary_weight : intra_weight});
  }
  LabeledGraph out{EmpiricalGraph(n, std::move(edges)), {}};
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = i < size1 ? 1 : 2;
  return out;
}

PointCloud gen_gauss_uniform(std::size_t n1, std::size_t n2, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  PointCloud pc;
  pc.points.resize(static_cast<Eigen::Index>(n1 + n2), 2);
  pc.labels.reserve(n1 + n2);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n1; ++i, ++row) {
    pc.points(row, 0) = 2.0 + 0.1 * rng.normal();
    pc.points(row, 1) = 0.2 + 0.1 * rng.normal();
    pc.labels.push_back(1);
  }
  for (std::size_t i = 0; i < n2; ++i, ++row) {
    pc.points(row, 0) = rng.uniform_open(0.0, 8.0);
    pc.points(row, 1) = rng.uniform_open(-0.05, 0.0);
    pc.labels.push_back(2);
  }
  return pc;
}

double gaussian_weight(double distance, double sigma) {
  return std::exp(-(distance * distance) / (2.0 * sigma * sigma));
}

double median_bandwidth(std::vector<double> distances) {
  auto median = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
  };
  if (distances.empty()) return 1.0;
  double med = median(distances);
  if (med > 0.0) return med;
  std::erase_if(distances, [](double d) { return !(d > 0.0); });
  if (distances.empty()) return 1.0;
  return median(distances);
}

namespace {

double point_distance(const Eigen::MatrixXd& pts, Eigen::Index a, Eigen::Index b) {
  return (pts.row(a) - pts.row(b)).norm();
}

void check_sigma(std::optional<double> sigma) {
  if (sigma && !(*sigma > 0.0 && std::isfinite(*sigma))) {
    throw std::invalid_argument("kernel bandwidth sigma must be positive");
  }
}

}  // namespace

BuiltGraph build_knn_gauss_graph(const PointCloud& pc, std::optional<double> sigma, std::size_t knn) {
  const auto n = static_cast<std::size_t>(pc.points.rows());
  if (n < 2) throw std::invalid_argument("build_knn_gauss_graph: need at least 2 points");
  if (knn == 0) throw std::invalid_argument("build_knn_gauss_graph: knn must be >= 1");
  check_sigma(sigma);
  if (!pc.points.allFinite()) throw std::invalid_argument("build_knn_gauss_graph: non-finite coordinates");

  // Full distance matrix; desk-scale inputs only.
  Eigen::MatrixXd dist(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  bool all_identical = true;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(n); ++j) {
      dist(i, j) = dist(j, i) = point_distance(pc.points, i, j);
      if (dist(i, j) > 0.0) all_identical = false;
    }
  }

  if (all_identical) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    }
    return {EmpiricalGraph(n, std::move(edges)), sigma.value_or(1.0)};
  }

  double bw = 0.0;
  if (sigma) {
    bw = *sigma;
  } else {
    std::vector<double> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
      for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(n); ++j) pairs.push_back(dist(i, j));
    }
    bw = median_bandwidth(std::move(pairs));
  }

  const std::size_t kk = std::min(knn, n - 1);
  std::vector<char> keep(n * n, 0);
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::erase(order, i);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk), order.end(),
                      [&](NodeId a, NodeId b) {
                        const double da = dist(i, a);
                        const double db = dist(i, b);
                        return da < db || (da == db && a < b);
                      });
    for (std::size_t r = 0; r < kk; ++r) {
      const NodeId j = order[r];
      keep[std::min(i, j) * n + std::max(i, j)] = 1;
    }
  }

  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (!keep[i * n + j]) continue;
      double w = gaussian_weight(dist(i, j), bw);
      // Far-apart neighbours can underflow; keep the edge with the smallest positive weight.
      if (!(w > 0.0)) w = std::numeric_limits<double>::min();
      edges.push_back({i, j, w});
    }
  }
  return {EmpiricalGraph(n, std::move(edges)), bw};
}

BuiltGraph build_connected_knn_gauss_graph(const PointCloud& pc, std::optional<double> sigma, std::size_t knn) {
  const auto n = static_cast<std::size_t>(pc.points.rows());
  BuiltGraph built = build_knn_gauss_graph(pc, sigma, knn);
  while (true) {
    const auto comp = connected_components(built.graph);
    const bool connected = std::all_of(comp.begin(), comp.end(), [](std::uint32_t c) { return c == 0; });
    if (connected || knn >= n - 1) return built;
    const std::size_t next = std::min(2 * knn, n - 1);
    fmt::print(stderr, "warning: knn graph with knn = {} is disconnected; rebuilding with knn = {}\n", knn, next);
    knn = next;
    built = build_knn_gauss_graph(pc, sigma, knn);
  }
}

BuiltGraph build_pixel_graph(const ImageGrid& img, std::size_t hop_radius, std::optional<double> sigma,
                             double weight_floor_quantile) {
  if (hop_radius == 0) throw std::invalid_argument("build_pixel_graph: hop radius must be >= 1");
  if (img.height == 0 || img.width == 0 || img.channels == 0) {
    throw std::invalid_argument("build_pixel_graph: empty image");
  }
  if (img.pixels.size() != img.height * img.width * img.channels) {
    throw std::invalid_argument("build_pixel_graph: pixel buffer size mismatch");
  }
  if (!(weight_floor_quantile >= 0.0 && weight_floor_quantile < 1.0)) {
    throw std::invalid_argument("build_pixel_graph: quantile must lie in [0, 1)");
  }
  check_sigma(sigma);

  const auto radius = static_cast<std::ptrdiff_t>(hop_radius);
  const auto h = static_cast<std::ptrdiff_t>(img.height);
  const auto w = static_cast<std::ptrdiff_t>(img.width);
  struct Candidate {
    NodeId a;
    NodeId b;
    double dist;
  };
  std::vector<Candidate> cand;
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      const auto a = static_cast<NodeId>(r * w + c);
      // Neighbours later in row-major order, so each pair appears once.
      for (std::ptrdiff_t dr = 0; dr <= radius && r + dr < h; ++dr) {
        for (std::ptrdiff_t dc = -radius; dc <= radius; ++dc) {
          if (dr == 0 && dc <= 0) continue;
          const std::ptrdiff_t c2 = c + dc;
          if (c2 < 0 || c2 >= w) continue;
          const auto b = static_cast<NodeId>((r + dr) * w + c2);
          double d2 = 0.0;
          for (std::size_t ch = 0; ch < img.channels; ++ch) {
            const double diff = img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), ch) -
                                img.at(static_cast<std::size_t>(r + dr), static_cast<std::size_t>(c2), ch);
            d2 += diff * diff;
          }
          cand.push_back({a, b, std::sqrt(d2)});
        }
      }
    }
  }

  double bw = 0.0;
  if (sigma) {
    bw = *sigma;
  } else {
    std::vector<double> d;
    d.reserve(cand.size());
    for (const auto& c : cand) d.push_back(c.dist);
    bw = median_bandwidth(std::move(d));
  }

  std::vector<double> weight(cand.size());
  for (std::size_t e = 0; e < cand.size(); ++e) {
    weight[e] = std::max(gaussian_weight(cand[e].dist, bw), std::numeric_limits<double>::min());
  }
  std::vector<std::size_t> by_weight(cand.size());
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::stable_sort(by_weight.begin(), by_weight.end(), [&](std::size_t x, std::size_t y) { return weight[x] < weight[y]; });
  const auto drop = static_cast<std::size_t>(std::floor(weight_floor_quantile * static_cast<double>(cand.size())));
  std::vector<char> removed(cand.size(), 0);
  for (std::size_t r = 0; r < drop; ++r) removed[by_weight[r]] = 1;

  std::vector<Edge> edges;
  edges.reserve(cand.size() - drop);
  for (std::size_t e = 0; e < cand.size(); ++e) {
    if (!removed[e]) edges.push_back({cand[e].a, cand[e].b, weight[e]});
  }
  return {EmpiricalGraph(img.height * img.width, std::move(edges)), bw};
}

ImageGrid make_two_region_image(std::size_t height, std::size_t width, std::size_t r0, std::size_t c0,
                                std::size_t r1, std::size_t c1, const std::vector<double>& background,
                                const std::vector<double>& object) {
  if (background.empty() || background.size() != object.size()) {
    throw std::invalid_argument("make_two_region_image: colours must have the same channel count");
  }
  ImageGrid img{height, width, background.size(), std::vector<double>(height * width * background.size())};
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const bool inside = r >= r0 && r <= r1 && c >= c0 && c <= c1;
      for (std::size_t ch = 0; ch < img.channels; ++ch) img.at(r, c, ch) = inside ? object[ch] : background[ch];
    }
  }
  return img;
}

}  // namespace flowclust
