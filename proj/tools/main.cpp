#include <iostream>
#include <string>
#include <vector>

#include "prefkb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prefkb::run_cli(args, std::cout, std::cerr);
}
