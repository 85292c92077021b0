#include "flowclust/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "flowclust/metrics.hpp"
#include "flowclust/random.hpp"
#include "flowclust/seeding.hpp"

namespace flowclust {

ChainResult run_chain_experiment(const ChainExperiment& exp) {
  const ChainSpec& spec = exp.chain;
  ChainResult r{gen_chain(spec.size1, spec.size2, 1.0, spec.boundary_weight), {}, {}, {}, {}, 0.0};
  r.closed_form = chain_closed_form(spec);

  const TVProblem problem(r.graph.graph, {exp.seed}, spec.lambda, spec.alpha);
  SolveOptions opts;
  opts.iterations = exp.iterations;
  r.solution = solve_tv(problem, opts);
  r.certificate = check_certificate(problem, r.solution, 1e-6);

  const EigenPairs pairs = eig_laplacian(r.graph.graph, 2, LaplacianKind::kUnnormalized);
  r.fiedler_value = pairs.values[1];
  const Eigen::VectorXd v = pairs.vectors.col(1);
  r.fiedler.assign(v.data(), v.data() + v.size());
  return r;
}

std::size_t count_distinct_rounded(const std::vector<double>& values, double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("count_distinct_rounded: resolution must be positive");
  std::set<long long> seen;
  for (double v : values) seen.insert(std::llround(v / resolution));
  return seen.size();
}

std::size_t effective_eta(const EmpiricalGraph& g, std::size_t eta, double min_degree) {
  std::size_t max_degree = 0;
  double total_degree = 0.0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    max_degree = std::max(max_degree, g.degree(i));
    total_degree += static_cast<double>(g.degree(i));
    if (weighted_degree(g, i) < min_degree) continue;
    for (const auto& nb : g.neighbors(i)) {
      if (common_neighbors(g, i, nb.node) >= eta) return eta;
    }
  }
  if (max_degree == 0) return eta;
  const double mean_degree = total_degree / static_cast<double>(g.num_nodes());
  const auto scaled = static_cast<std::size_t>(std::floor(static_cast<double>(eta) * mean_degree /
                                                          static_cast<double>(max_degree)));
  return std::max<std::size_t>(1, scaled);
}

TwoClusterResult run_two_cluster_experiment(const TwoClusterExperiment& exp) {
  TwoClusterResult r{gen_gauss_uniform(exp.n1, exp.n2, exp.rng_seed), {}, {}, {}, 0.0, 0.0, 0};
  r.graph = build_connected_knn_gauss_graph(r.points, exp.sigma, exp.knn);
  const EmpiricalGraph& g = r.graph.graph;
  r.eta_used = effective_eta(g, exp.eta, exp.min_degree);

  FlowClusterConfig cfg;
  cfg.lambda = exp.lambda;
  cfg.alpha = exp.alpha;
  cfg.k = exp.k;
  cfg.rounds = exp.rounds;
  cfg.iterations = exp.iterations;
  cfg.seed_params = {r.eta_used, exp.min_degree, exp.rng_seed};
  cfg.kmeans.k = exp.k;
  cfg.kmeans.rng_seed = exp.rng_seed;
  cfg.threads = exp.threads;
  r.flow = flow_cluster(g, cfg);

  KMeansConfig km;
  km.k = exp.k;
  km.rng_seed = exp.rng_seed;
  r.spectral = spectral_cluster(g, exp.k, km, exp.spectral_kind);

  r.flow_accuracy = clustering_accuracy(r.flow.assignment.labels, r.points.labels);
  r.spectral_accuracy = clustering_accuracy(r.spectral.labels, r.points.labels);
  return r;
}

namespace {

bool inside(const PixelRect& rect, std::size_t row, std::size_t col) {
  return row >= rect.r0 && row <= rect.r1 && col >= rect.c0 && col <= rect.c1;
}

void check_rect(const PixelRect& rect, std::size_t height, std::size_t width, const char* what) {
  if (rect.r0 > rect.r1 || rect.c0 > rect.c1 || rect.r1 >= height || rect.c1 >= width) {
    throw std::invalid_argument(std::string("pixel experiment: ") + what + " rectangle outside the image");
  }
}

}  // namespace

double mid_gap_threshold(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("mid_gap_threshold: need at least two values");
  std::sort(values.begin(), values.end());
  double best_gap = -1.0;
  double threshold = values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double gap = values[i] - values[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      threshold = values[i - 1] + 0.5 * gap;
    }
  }
  return threshold;
}

double intersection_over_union(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("intersection_over_union: size mismatch");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inter += (a[i] && b[i]) ? 1 : 0;
    uni += (a[i] || b[i]) ? 1 : 0;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

PixelResult segment_pixels(const ImageGrid& image, const PixelExperiment& exp) {
  check_rect(exp.seeds, image.height, image.width, "seed");
  PixelResult r;
  r.image = image;
  r.graph = build_pixel_graph(r.image, exp.hop_radius, exp.sigma, exp.weight_floor_quantile);
  const EmpiricalGraph& g = r.graph.graph;

  const std::size_t n = image.height * image.width;
  std::vector<NodeId> seeds;
  for (std::size_t row = 0; row < image.height; ++row) {
    for (std::size_t col = 0; col < image.width; ++col) {
      if (inside(exp.seeds, row, col)) seeds.push_back(static_cast<NodeId>(row * image.width + col));
    }
  }

  const TVProblem problem(g, seeds, exp.lambda, exp.alpha);
  SolveOptions opts;
  opts.iterations = exp.iterations;
  r.solution = solve_tv(problem, opts);
  r.threshold = mid_gap_threshold(r.solution.u.values);
  r.flow_mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.flow_mask[i] = r.solution.u[i] > r.threshold;

  // The spectral cluster holding most seed pixels is taken as the object.
  KMeansConfig km;
  km.k = 2;
  km.rng_seed = exp.rng_seed;
  const ClusterAssignment sc = spectral_cluster(g, 2, km, LaplacianKind::kSymmetricNormalized);
  std::size_t votes[2] = {0, 0};
  for (NodeId s : seeds) ++votes[sc.labels[s] - 1];
  const int object_label = votes[1] > votes[0] ? 2 : 1;
  r.spectral_mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.spectral_mask[i] = sc.labels[i] == object_label;
  return r;
}

PixelResult run_pixel_experiment(const PixelExperiment& exp) {
  check_rect(exp.object, exp.height, exp.width, "object");
  ImageGrid image = make_two_region_image(exp.height, exp.width, exp.object.r0, exp.object.c0, exp.object.r1,
                                          exp.object.c1, exp.background, exp.foreground);
  if (exp.noise > 0.0) {
    Rng rng(exp.rng_seed);
    for (double& v : image.pixels) v = std::clamp(v + exp.noise * rng.normal(), 0.0, 1.0);
  }
  PixelResult r = segment_pixels(image, exp);
  r.truth_mask.assign(exp.height * exp.width, false);
  for (std::size_t row = 0; row < exp.height; ++row) {
    for (std::size_t col = 0; col < exp.width; ++col) r.truth_mask[row * exp.width + col] = inside(exp.object, row, col);
  }
  r.flow_iou = intersection_over_union(r.flow_mask, r.truth_mask);
  r.spectral_iou = intersection_over_union(r.spectral_mask, r.truth_mask);
  return r;
}

}  // namespace flowclust
