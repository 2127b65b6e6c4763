#include <iostream>

#include "chargedrop/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return chargedrop::run_cli(args, std::cout, std::cerr);
}
