#pragma once

#include <stdexcept>
#include <string>

namespace flowclust {

/// Malformed or inconsistent input data (files, graphs, parameter combinations
/// that depend on the data). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flowclust
