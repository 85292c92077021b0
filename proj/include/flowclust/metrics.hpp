#pragma once

#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace flowclust {

/// Exact permutation search is limited to this many labels.
inline constexpr int kMaxAccuracyLabels = 10;

struct MetricReport {
  double accuracy = 0.0;
  double adjusted_rand_index = 0.0;
  /// confusion[p - 1][t - 1] counts nodes with predicted label p and true label t.
  std::vector<std::vector<long>> confusion;
};

/// Best match rate over all bijections between predicted and true labels.
/// Labels must be in 1..k with k <= 10. Throws std::invalid_argument on
/// length mismatch, empty input, labels < 1 or k > 10.
double clustering_accuracy(std::span<const int> pred, std::span<const int> truth);

/// Adjusted Rand index from the pair-counting contingency table. Labels can be
/// arbitrary integers. Returns 1 when the chance-corrected denominator
/// vanishes (both partitions trivial).
double adjusted_rand(std::span<const int> pred, std::span<const int> truth);

MetricReport evaluate(std::span<const int> pred, std::span<const int> truth);

nlohmann::json to_json(const MetricReport& report);

}  // namespace flowclust
