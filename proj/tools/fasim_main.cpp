#include <iostream>

#include "fasim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fasim::run(args, std::cout, std::cerr);
}
