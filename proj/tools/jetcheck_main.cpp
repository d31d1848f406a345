#include <iostream>
#include <vector>

#include "jetcheck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jetcheck::run_cli(args, std::cout, std::cerr);
}
