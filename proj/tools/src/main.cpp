#include <cstdlib>
#include <iostream>

#include "njk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return njk::run_cli(args, std::cin, std::cout, std::cerr, std::getenv("NJK_SEED"));
}
