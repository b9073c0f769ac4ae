#include <iostream>
#include <string>
#include <vector>

#include "rowmotion/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rowmotion::cli::run(args, std::cout, std::cerr);
}
