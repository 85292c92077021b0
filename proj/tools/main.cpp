#include <iostream>
#include <string>
#include <vector>

#include "flowclust/cli.hpp"

int main(int argc, char** argv) {
  return flowclust::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
