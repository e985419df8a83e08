#include <iostream>
#include <string>
#include <vector>

#include "rfp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rfp::cli::run(args, std::cout, std::cerr);
}
