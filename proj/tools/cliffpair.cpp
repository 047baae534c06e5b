#include <iostream>

#include "cliffpair/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cliffpair::run_cli(args, std::cout, std::cerr);
}
