#pragma once

// File formats. Node indices are 1-based in every file and 0-based in memory.
//
//   graph      CSV "i,j,w", one row per undirected edge; optional sidecar
//              <path>.json {"n": <int>} fixes the node count
//   signal     CSV "i,<name>"
//   features   CSV "i,f1,...,fS"
//   table      CSV "i,<name>,..." (figure series)
//   labels     CSV "i,label"
//   points     CSV "x1,x2[,label]"
//   images     binary PGM (P5) / PPM (P6), maxval <= 65535
//
// All readers throw DataError on malformed input or I/O failure.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "flowclust/datasets.hpp"
#include "flowclust/graph.hpp"

namespace flowclust::io {

EmpiricalGraph read_graph_csv(const std::filesystem::path& path);
/// Writes the CSV and the sidecar <path>.json with "n" and the given params.
void write_graph_csv(const std::filesystem::path& path, const EmpiricalGraph& g, const nlohmann::json& params);

void write_signal_csv(const std::filesystem::path& path, std::string_view column, const std::vector<double>& values);
std::vector<double> read_signal_csv(const std::filesystem::path& path);

void write_features_csv(const std::filesystem::path& path, const Eigen::MatrixXd& features);

/// CSV "i,<names...>" with one row per node; every column must have the same
/// length. Throws std::invalid_argument otherwise.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                     const std::vector<std::vector<double>>& columns);

void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels);
std::vector<int> read_labels_csv(const std::filesystem::path& path);

PointCloud read_points_csv(const std::filesystem::path& path);
void write_points_csv(const std::filesystem::path& path, const PointCloud& pc);

ImageGrid read_pnm(const std::filesystem::path& path);
/// 8-bit PPM (3 channels) or PGM (1 channel).
void write_pnm(const std::filesystem::path& path, const ImageGrid& img);
/// PGM with 255 for true, 0 for false.
void write_mask_pgm(const std::filesystem::path& path, const std::vector<bool>& mask, std::size_t height,
                    std::size_t width);

nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Sidecar path for an output file: <path>.json
std::filesystem::path sidecar_path(const std::filesystem::path& path);

/// "3,5,7" (1-based) -> {2, 4, 6}. Throws DataError on bad tokens.
std::vector<NodeId> parse_node_list(std::string_view text);

}  // namespace flowclust::io
