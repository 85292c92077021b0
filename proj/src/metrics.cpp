#include "flowclust/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace flowclust {

namespace {

void check_lengths(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw std::invalid_argument(fmt::format("metrics: {} predicted vs {} true labels", pred.size(), truth.size()));
  }
  if (pred.empty()) throw std::invalid_argument("metrics: empty labelling");
}

int label_count(std::span<const int> pred, std::span<const int> truth) {
  int k = 0;
  for (std::span<const int> labels : {pred, truth}) {
    for (int l : labels) {
      if (l < 1) throw std::invalid_argument(fmt::format("metrics: label {} < 1", l));
      k = std::max(k, l);
    }
  }
  return k;
}

std::vector<std::vector<long>> confusion_matrix(std::span<const int> pred, std::span<const int> truth, int k) {
  std::vector<std::vector<long>> m(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i < pred.size(); ++i) ++m[static_cast<std::size_t>(pred[i] - 1)][static_cast<std::size_t>(truth[i] - 1)];
  return m;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double clustering_accuracy(std::span<const int> pred, std::span<const int> truth) {
  check_lengths(pred, truth);
  const int k = label_count(pred, truth);
  if (k > kMaxAccuracyLabels) {
    throw std::invalid_argument(fmt::format("clustering_accuracy: {} labels exceeds the limit of {}", k, kMaxAccuracyLabels));
  }
  const auto m = confusion_matrix(pred, truth, k);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  long best = 0;
  do {
    long matched = 0;
    for (std::size_t p = 0; p < perm.size(); ++p) matched += m[p][static_cast<std::size_t>(perm[p])];
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

double adjusted_rand(std::span<const int> pred, std::span<const int> truth) {
  check_lengths(pred, truth);
  std::map<std::pair<int, int>, long> cells;
  std::map<int, long> rows, cols;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++cells[{pred[i], truth[i]}];
    ++rows[pred[i]];
    ++cols[truth[i]];
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, c] : cells) index += choose2(static_cast<double>(c));
  for (const auto& [key, c] : rows) sum_rows += choose2(static_cast<double>(c));
  for (const auto& [key, c] : cols) sum_cols += choose2(static_cast<double>(c));
  const double total = choose2(static_cast<double>(pred.size()));
  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

MetricReport evaluate(std::span<const int> pred, std::span<const int> truth) {
  MetricReport r;
  r.accuracy = clustering_accuracy(pred, truth);
  r.adjusted_rand_index = adjusted_rand(pred, truth);
  r.confusion = confusion_matrix(pred, truth, label_count(pred, truth));
  return r;
}

nlohmann::json to_json(const MetricReport& report) {
  return {{"accuracy", report.accuracy},
          {"adjusted_rand_index", report.adjusted_rand_index},
          {"confusion", report.confusion}};
}

}  // namespace flowclust
