#include <iostream>
#include <string>
#include <vector>

#include "ecf/cli.hpp"

int main(int argc, char** argv) {
  return ecf::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
