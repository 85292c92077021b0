#pragma once

#include <vector>

#include <nlohmann/json.hpp>

namespace flowclust {

/// Label in 1..k per node plus a JSON record of how it was produced (method,
/// parameters, RNG seeds, per-round seed sets or eigenvalues).
struct ClusterAssignment {
  std::vector<int> labels;
  nlohmann::json provenance = nlohmann::json::object();
};

}  // namespace flowclust
