#include "flowclust/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "flowclust/datasets.hpp"
#include "flowclust/error.hpp"
#include "flowclust/experiments.hpp"
#include "flowclust/flow_clustering.hpp"
#include "flowclust/io.hpp"
#include "flowclust/metrics.hpp"
#include "flowclust/spectral.hpp"
#include "flowclust/tv_solver.hpp"

namespace flowclust::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json typed_value(const std::string& s) {
  long long i = 0;
  auto [pi, ei] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ei == std::errc() && pi == s.data() + s.size() && !s.empty()) return i;
  double d = 0.0;
  auto [pd, ed] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ed == std::errc() && pd == s.data() + s.size() && !s.empty()) return d;
  return s;
}

json option_value(const CLI::Option* opt) {
  if (opt->get_expected_max() == 0) return opt->count() > 0;
  std::vector<std::string> values = opt->results();
  if (values.empty()) {
    if (opt->get_default_str().empty()) return nullptr;
    values = {opt->get_default_str()};
  }
  if (values.size() == 1) return typed_value(values.front());
  json arr = json::array();
  for (const auto& v : values) arr.push_back(typed_value(v));
  return arr;
}

// Every option of the selected command chain, keyed by long name, plus the
// command path. Defaults are included so the record is complete.
json collect_params(const CLI::App& root) {
  json params = json::object();
  std::vector<std::string> path;
  const CLI::App* app = &root;
  while (app != nullptr) {
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help" || name == "config") continue;
      params[name] = option_value(opt);
    }
    const auto subs = app->get_subcommands();
    app = subs.empty() ? nullptr : subs.front();
    if (app != nullptr) path.push_back(app->get_name());
  }
  return {{"command", fmt::format("{}", fmt::join(path, " "))}, {"options", params}};
}

void write_sidecar(const fs::path& file, const json& params) { io::write_json(io::sidecar_path(file), {{"params", params}}); }

// "r0,c0,r1,c1", 1-based and inclusive.
PixelRect parse_rect(const std::string& text) {
  std::vector<NodeId> v;
  try {
    v = io::parse_node_list(text);
  } catch (const DataError&) {
    throw std::invalid_argument("rectangle must be r0,c0,r1,c1 with 1-based indices: '" + text + "'");
  }
  if (v.size() != 4) throw std::invalid_argument("rectangle must be r0,c0,r1,c1 with 1-based indices: '" + text + "'");
  return {v[0], v[1], v[2], v[3]};
}

std::vector<std::vector<NodeId>> parse_seed_groups(const std::string& text) {
  std::vector<std::vector<NodeId>> groups;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t semi = text.find(';', start);
    const std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    groups.push_back(io::parse_node_list(part));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return groups;
}

LaplacianKind parse_laplacian(const std::string& s) {
  return s == "normalized" ? LaplacianKind::kSymmetricNormalized : LaplacianKind::kUnnormalized;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> to_doubles(const std::vector<int>& v) { return {v.begin(), v.end()}; }

json certificate_json(const CertificateReport& c) {
  return {{"seed_balance_violation", c.seed_balance_violation},
          {"nonseed_balance_violation", c.nonseed_balance_violation},
          {"capacity_violation", c.capacity_violation},
          {"saturation_consistency", c.saturation_consistency},
          {"max_violation", c.max_violation()}};
}

json seed_sets_json(const std::vector<std::vector<NodeId>>& sets) {
  json out = json::array();
  for (const auto& s : sets) {
    json one = json::array();
    for (NodeId v : s) one.push_back(v + 1);
    out.push_back(one);
  }
  return out;
}

// Appends every key of the config file as --key value unless the flag is
// already on the command line.
void inject_config(std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return;
  const json cfg = io::read_json(*path);
  if (!cfg.is_object()) throw DataError(*path + ": config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    const bool present = std::any_of(args.begin(), args.end(),
                                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    if (present) continue;
    const auto as_arg = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      args.push_back(flag);
      for (const auto& v : value) args.push_back(as_arg(v));
    } else {
      args.push_back(flag);
      args.push_back(as_arg(value));
    }
  }
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flow-based clustering with seeded total-variation minimisation", "flowclust"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t rng_seed = 0;
  std::string config_path;
  app.add_option("--rng-seed", rng_seed, "Seed for all randomness");
  app.add_option("--config", config_path, "JSON file of option values; command-line flags win");

  // generate
  auto* generate = app.add_subcommand("generate", "Synthetic datasets");
  generate->require_subcommand(1);
  auto* gen_chain_cmd = generate->add_subcommand("chain", "Two-cluster chain graph");
  std::size_t size1 = 10, size2 = 10;
  double intra = 1.0, boundary = 0.1;
  std::string out_path, labels_path;
  gen_chain_cmd->add_option("--size1", size1, "Nodes in the first cluster");
  gen_chain_cmd->add_option("--size2", size2, "Nodes in the second cluster");
  gen_chain_cmd->add_option("--intra", intra, "Weight of edges inside a cluster");
  gen_chain_cmd->add_option("--boundary", boundary, "Weight of the edge between the clusters");
  gen_chain_cmd->add_option("--out", out_path, "Graph CSV")->required();
  gen_chain_cmd->add_option("--labels", labels_path, "Ground-truth labels CSV");

  auto* gen_gu = generate->add_subcommand("gauss-uniform", "Gaussian blob plus uniform strip");
  std::size_t n1 = 200, n2 = 800;
  gen_gu->add_option("--n1", n1, "Points in the Gaussian blob");
  gen_gu->add_option("--n2", n2, "Points in the uniform strip");
  gen_gu->add_option("--out", out_path, "Points CSV")->required();

  // build-graph
  auto* build = app.add_subcommand("build-graph", "Similarity graphs from points or images");
  build->require_subcommand(1);
  auto* build_points = build->add_subcommand("points", "Symmetrised kNN graph with Gaussian weights");
  std::string points_path, image_path;
  std::size_t knn = 12;
  double sigma = 1.0;
  bool connect = false;
  build_points->add_option("--points", points_path, "Points CSV")->required();
  build_points->add_option("--knn", knn, "Neighbours per point");
  auto* points_sigma = build_points->add_option("--sigma", sigma, "Kernel bandwidth (default: median distance)")
                          ->default_str("median");
  build_points->add_flag("--connect", connect, "Double knn until the graph is connected");
  build_points->add_option("--out", out_path, "Graph CSV")->required();

  auto* build_image = build->add_subcommand("image", "Pixel graph");
  std::size_t radius = 3;
  double quantile = 0.1;
  build_image->add_option("--image", image_path, "PGM or PPM image")->required();
  build_image->add_option("--radius", radius, "Chebyshev neighbourhood radius");
  auto* image_sigma = build_image->add_option("--sigma", sigma, "Kernel bandwidth (default: median distance)")
                          ->default_str("median");
  build_image->add_option("--quantile", quantile, "Fraction of the lightest edges to drop");
  build_image->add_option("--out", out_path, "Graph CSV")->required();

  // solve-tv
  auto* solve = app.add_subcommand("solve-tv", "Seeded TV minimisation with a flow certificate");
  std::string graph_path, seeds_text, out_dir;
  double lambda = 0.01, alpha = 0.005, accept_tol = 1e-2, sat_tol = 1e-6;
  std::size_t iters = 1000;
  solve->add_option("--graph", graph_path, "Graph CSV")->required();
  solve->add_option("--seeds", seeds_text, "Seed nodes, 1-based, comma separated")->required();
  solve->add_option("--lambda", lambda, "TV weight");
  solve->add_option("--alpha", alpha, "Non-seed shrinkage");
  solve->add_option("--iters", iters, "Solver iterations");
  solve->add_option("--saturation-tol", sat_tol, "Slack below capacity that still counts as saturated");
  solve->add_option("--accept-tol", accept_tol, "Certificate acceptance threshold");
  solve->add_option("--out-dir", out_dir, "Directory for solution.csv, flow.csv, certificate.json")->required();

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Cluster the nodes of a graph");
  cluster->require_subcommand(1);
  std::size_t k = 2, rounds = 10, eta = 50, threads = 1, restarts = 10, max_iters = 300;
  double min_degree = 12.0;
  bool normalize_rows = false;
  std::string laplacian = "unnormalized";

  auto* cluster_flow = cluster->add_subcommand("flow", "Flow-based clustering");
  cluster_flow->add_option("--graph", graph_path, "Graph CSV")->required();
  cluster_flow->add_option("--k", k, "Number of clusters");
  cluster_flow->add_option("--lambda", lambda, "TV weight");
  cluster_flow->add_option("--alpha", alpha, "Non-seed shrinkage");
  cluster_flow->add_option("--rounds", rounds, "Seed rounds (feature columns)");
  cluster_flow->add_option("--iters", iters, "Solver iterations per round");
  cluster_flow->add_option("--eta", eta, "Common neighbours needed to join the seed set");
  cluster_flow->add_option("--min-degree", min_degree, "Minimum weighted degree of an anchor");
  cluster_flow->add_option("--seeds", seeds_text, "Explicit seed sets, e.g. '1,2;7,8'");
  cluster_flow->add_flag("--normalize-rows", normalize_rows, "Scale feature rows to unit length");
  cluster_flow->add_option("--threads", threads, "Worker threads for the rounds");
  cluster_flow->add_option("--restarts", restarts, "k-means restarts");
  cluster_flow->add_option("--max-iters", max_iters, "k-means iteration cap");
  cluster_flow->add_option("--out-dir", out_dir, "Directory for labels.csv, features.csv, provenance.json")
      ->required();

  auto* cluster_spectral = cluster->add_subcommand("spectral", "Spectral clustering");
  cluster_spectral->add_option("--graph", graph_path, "Graph CSV")->required();
  cluster_spectral->add_option("--k", k, "Number of clusters");
  cluster_spectral->add_option("--laplacian", laplacian, "unnormalized or normalized")
      ->check(CLI::IsMember({"unnormalized", "normalized"}));
  cluster_spectral->add_option("--restarts", restarts, "k-means restarts");
  cluster_spectral->add_option("--max-iters", max_iters, "k-means iteration cap");
  cluster_spectral->add_option("--out-dir", out_dir, "Directory for labels.csv, features.csv, provenance.json")
      ->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Accuracy and adjusted Rand index");
  std::string pred_path, truth_path;
  metrics_cmd->add_option("--pred", pred_path, "Predicted labels CSV")->required();
  metrics_cmd->add_option("--truth", truth_path, "True labels CSV")->required();
  metrics_cmd->add_option("--out", out_path, "Metrics JSON (also printed)");

  // repro
  auto* repro = app.add_subcommand("repro", "Data series behind the figures");
  repro->require_subcommand(1);
  auto* fig1 = repro->add_subcommand("fig1", "Chain: TV solution and Fiedler vector");
  auto* fig2 = repro->add_subcommand("fig2", "Chain: flow and Fiedler features");
  ChainExperiment chain_exp;
  std::size_t chain_seed = 3;
  for (auto* fig : {fig1, fig2}) {
    fig->add_option("--size1", chain_exp.chain.size1, "Nodes in the first cluster");
    fig->add_option("--size2", chain_exp.chain.size2, "Nodes in the second cluster");
    fig->add_option("--boundary", chain_exp.chain.boundary_weight, "Weight of the boundary edge");
    fig->add_option("--lambda", chain_exp.chain.lambda, "TV weight");
    fig->add_option("--alpha", chain_exp.chain.alpha, "Non-seed shrinkage");
    fig->add_option("--seed-node", chain_seed, "Seed node, 1-based, inside the first cluster");
    fig->add_option("--iters", chain_exp.iterations, "Solver iterations");
    fig->add_option("--out-dir", out_dir, "Output directory")->required();
  }

  auto* fig3 = repro->add_subcommand("fig3", "Blob and strip: flow vs spectral labels");
  TwoClusterExperiment tc;
  bool median_sigma = false;
  fig3->add_option("--n1", tc.n1, "Points in the Gaussian blob");
  fig3->add_option("--n2", tc.n2, "Points in the uniform strip");
  fig3->add_option("--knn", tc.knn, "Neighbours per point");
  double fig3_sigma = 0.03;
  fig3->add_option("--sigma", fig3_sigma, "Kernel bandwidth");
  fig3->add_flag("--median-sigma", median_sigma, "Use the median pairwise distance as bandwidth");
  fig3->add_option("--lambda", tc.lambda, "TV weight");
  fig3->add_option("--alpha", tc.alpha, "Non-seed shrinkage");
  fig3->add_option("--eta", tc.eta, "Common neighbours needed to join the seed set");
  fig3->add_option("--min-degree", tc.min_degree, "Minimum weighted degree of an anchor");
  fig3->add_option("--rounds", tc.rounds, "Seed rounds");
  fig3->add_option("--iters", tc.iterations, "Solver iterations per round");
  std::string fig3_laplacian = "normalized";
  fig3->add_option("--laplacian", fig3_laplacian, "Spectral baseline: unnormalized or normalized")
      ->check(CLI::IsMember({"unnormalized", "normalized"}));
  fig3->add_option("--threads", tc.threads, "Worker threads for the rounds");
  fig3->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* fig4 = repro->add_subcommand("fig4", "Pixel segmentation masks");
  PixelExperiment px;
  std::string rect_text = "7,8,10,11", object_text = "5,6,12,13";
  fig4->add_option("--image", image_path, "PGM/PPM to segment instead of the synthetic image");
  fig4->add_option("--height", px.height, "Synthetic image height");
  fig4->add_option("--width", px.width, "Synthetic image width");
  fig4->add_option("--object", object_text, "Synthetic object rectangle r0,c0,r1,c1 (1-based, inclusive)");
  fig4->add_option("--noise", px.noise, "Noise standard deviation of the synthetic image");
  fig4->add_option("--rect", rect_text, "Seed rectangle r0,c0,r1,c1 (1-based, inclusive)");
  fig4->add_option("--radius", px.hop_radius, "Chebyshev neighbourhood radius");
  double fig4_sigma = 0.1;
  fig4->add_option("--sigma", fig4_sigma, "Kernel bandwidth");
  fig4->add_option("--quantile", px.weight_floor_quantile, "Fraction of the lightest edges to drop");
  fig4->add_option("--lambda", px.lambda, "TV weight");
  fig4->add_option("--alpha", px.alpha, "Non-seed shrinkage");
  fig4->add_option("--iters", px.iterations, "Solver iterations");
  fig4->add_option("--out-dir", out_dir, "Output directory")->required();

  try {
    inject_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const json params = collect_params(app);
    const fs::path dir(out_dir);

    if (gen_chain_cmd->parsed()) {
      const LabeledGraph lg = gen_chain(size1, size2, intra, boundary);
      io::write_graph_csv(out_path, lg.graph, params);
      if (!labels_path.empty()) {
        io::write_labels_csv(labels_path, lg.labels);
        write_sidecar(labels_path, params);
      }
    } else if (gen_gu->parsed()) {
      io::write_points_csv(out_path, gen_gauss_uniform(n1, n2, rng_seed));
      write_sidecar(out_path, params);
    } else if (build_points->parsed()) {
      const PointCloud pc = io::read_points_csv(points_path);
      const std::optional<double> s = points_sigma->count() > 0 ? std::optional<double>(sigma) : std::nullopt;
      const BuiltGraph bg = connect ? build_connected_knn_gauss_graph(pc, s, knn) : build_knn_gauss_graph(pc, s, knn);
      json p = params;
      p["sigma_used"] = bg.sigma;
      io::write_graph_csv(out_path, bg.graph, p);
    } else if (build_image->parsed()) {
      const ImageGrid img = io::read_pnm(image_path);
      const std::optional<double> s = image_sigma->count() > 0 ? std::optional<double>(sigma) : std::nullopt;
      const BuiltGraph bg = build_pixel_graph(img, radius, s, quantile);
      json p = params;
      p["sigma_used"] = bg.sigma;
      io::write_graph_csv(out_path, bg.graph, p);
    } else if (solve->parsed()) {
      const EmpiricalGraph g = io::read_graph_csv(graph_path);
      const TVProblem problem(g, io::parse_node_list(seeds_text), lambda, alpha);
      SolveOptions opts;
      opts.iterations = iters;
      const TVSolution sol = solve_tv(problem, opts);
      const CertificateReport cert = check_certificate(problem, sol, sat_tol);
      io::write_signal_csv(dir / "solution.csv", "u", sol.u.values);
      write_sidecar(dir / "solution.csv", params);
      std::vector<double> tails, heads;
      for (const auto& e : g.edges()) {
        tails.push_back(e.tail + 1.0);
        heads.push_back(e.head + 1.0);
      }
      io::write_table_csv(dir / "flow.csv", {"tail", "head", "flow"}, {tails, heads, sol.flow.values});
      write_sidecar(dir / "flow.csv", params);
      json c = certificate_json(cert);
      c["accepted"] = cert.accepted(accept_tol);
      c["objective"] = problem.objective(sol.u);
      c["iterations_run"] = sol.iterations_run;
      c["residual"] = sol.residual;
      c["params"] = params;
      io::write_json(dir / "certificate.json", c);
    } else if (cluster_flow->parsed()) {
      const EmpiricalGraph g = io::read_graph_csv(graph_path);
      FlowClusterConfig cfg;
      cfg.lambda = lambda;
      cfg.alpha = alpha;
      cfg.k = k;
      cfg.rounds = rounds;
      cfg.iterations = iters;
      cfg.seed_params = {eta, min_degree, rng_seed};
      cfg.kmeans = {k, restarts, max_iters, 1e-8, rng_seed};
      if (!seeds_text.empty()) cfg.forced_seeds = parse_seed_groups(seeds_text);
      cfg.normalize_rows = normalize_rows;
      cfg.threads = threads;
      const FlowClusterResult r = flow_cluster(g, cfg);
      io::write_labels_csv(dir / "labels.csv", r.assignment.labels);
      write_sidecar(dir / "labels.csv", params);
      io::write_features_csv(dir / "features.csv", r.features);
      write_sidecar(dir / "features.csv", params);
      json prov = r.assignment.provenance;
      prov["params"] = params;
      io::write_json(dir / "provenance.json", prov);
    } else if (cluster_spectral->parsed()) {
      const EmpiricalGraph g = io::read_graph_csv(graph_path);
      Eigen::MatrixXd features;
      const ClusterAssignment a =
          spectral_cluster(g, k, {k, restarts, max_iters, 1e-8, rng_seed}, parse_laplacian(laplacian), &features);
      io::write_labels_csv(dir / "labels.csv", a.labels);
      write_sidecar(dir / "labels.csv", params);
      io::write_features_csv(dir / "features.csv", features);
      write_sidecar(dir / "features.csv", params);
      json prov = a.provenance;
      prov["params"] = params;
      io::write_json(dir / "provenance.json", prov);
    } else if (metrics_cmd->parsed()) {
      const MetricReport report = evaluate(io::read_labels_csv(pred_path), io::read_labels_csv(truth_path));
      json j = to_json(report);
      j["params"] = params;
      out << j.dump(2) << "\n";
      if (!out_path.empty()) io::write_json(out_path, j);
    } else if (fig1->parsed() || fig2->parsed()) {
      if (chain_seed < 1) throw std::invalid_argument("--seed-node is 1-based");
      chain_exp.seed = static_cast<NodeId>(chain_seed - 1);
      const ChainResult r = run_chain_experiment(chain_exp);
      json summary = {{"certificate", certificate_json(r.certificate)},
                      {"closed_form", r.closed_form.values},
                      {"fiedler_value", r.fiedler_value},
                      {"distinct_tv_values", count_distinct_rounded(r.solution.u.values, 1e-3)},
                      {"distinct_fiedler_values", count_distinct_rounded(r.fiedler, 1e-3)},
                      {"params", params}};
      if (fig1->parsed()) {
        io::write_signal_csv(dir / "fig1_tv.csv", "u", r.solution.u.values);
        write_sidecar(dir / "fig1_tv.csv", params);
        io::write_signal_csv(dir / "fig1_fiedler.csv", "fiedler", r.fiedler);
        write_sidecar(dir / "fig1_fiedler.csv", params);
        io::write_json(dir / "fig1.json", summary);
      } else {
        io::write_table_csv(dir / "fig2_features.csv", {"flow", "fiedler", "cluster"},
                            {r.solution.u.values, r.fiedler, to_doubles(r.graph.labels)});
        write_sidecar(dir / "fig2_features.csv", params);
        io::write_json(dir / "fig2.json", summary);
      }
    } else if (fig3->parsed()) {
      tc.rng_seed = rng_seed;
      tc.sigma = median_sigma ? std::nullopt : std::optional<double>(fig3_sigma);
      tc.spectral_kind = parse_laplacian(fig3_laplacian);
      const TwoClusterResult r = run_two_cluster_experiment(tc);
      io::write_table_csv(dir / "fig3_points.csv", {"x1", "x2", "truth", "flow", "spectral"},
                          {to_vector(r.points.points.col(0)), to_vector(r.points.points.col(1)),
                           to_doubles(r.points.labels), to_doubles(r.flow.assignment.labels),
                           to_doubles(r.spectral.labels)});
      write_sidecar(dir / "fig3_points.csv", params);
      io::write_features_csv(dir / "fig3_features.csv", r.flow.features);
      write_sidecar(dir / "fig3_features.csv", params);
      io::write_json(dir / "fig3.json",
                     {{"flow_accuracy", r.flow_accuracy},
                      {"spectral_accuracy", r.spectral_accuracy},
                      {"flow_ari", adjusted_rand(r.flow.assignment.labels, r.points.labels)},
                      {"spectral_ari", adjusted_rand(r.spectral.labels, r.points.labels)},
                      {"sigma_used", r.graph.sigma},
                      {"edges", r.graph.graph.num_edges()},
                      {"eta_used", r.eta_used},
                      {"seed_sets", seed_sets_json(r.flow.seed_sets)},
                      {"spectral_provenance", r.spectral.provenance},
                      {"params", params}});
    } else if (fig4->parsed()) {
      px.seeds = parse_rect(rect_text);
      px.sigma = fig4_sigma;
      px.rng_seed = rng_seed;
      PixelResult r;
      if (image_path.empty()) {
        px.object = parse_rect(object_text);
        r = run_pixel_experiment(px);
      } else {
        r = segment_pixels(io::read_pnm(image_path), px);
      }
      const std::size_t h = r.image.height, w = r.image.width;
      const std::string image_name = r.image.channels == 3 ? "fig4_image.ppm" : "fig4_image.pgm";
      io::write_pnm(dir / image_name, r.image);
      write_sidecar(dir / image_name, params);
      io::write_signal_csv(dir / "fig4_u.csv", "u", r.solution.u.values);
      io::write_mask_pgm(dir / "fig4_flow_mask.pgm", r.flow_mask, h, w);
      io::write_mask_pgm(dir / "fig4_spectral_mask.pgm", r.spectral_mask, h, w);
      for (const char* f : {"fig4_u.csv", "fig4_flow_mask.pgm", "fig4_spectral_mask.pgm"}) {
        write_sidecar(dir / f, params);
      }
      json summary = {{"threshold", r.threshold}, {"sigma_used", r.graph.sigma}, {"params", params}};
      if (!r.truth_mask.empty()) {
        io::write_mask_pgm(dir / "fig4_truth_mask.pgm", r.truth_mask, h, w);
        write_sidecar(dir / "fig4_truth_mask.pgm", params);
        summary["flow_iou"] = r.flow_iou;
        summary["spectral_iou"] = r.spectral_iou;
      }
      io::write_json(dir / "fig4.json", summary);
    }
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace flowclust::cli
