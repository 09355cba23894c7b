#include <iostream>

#include "dfo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dfo::run_cli(args, std::cout, std::cerr);
}
