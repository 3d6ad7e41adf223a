#include <iostream>
#include <string>
#include <vector>

#include "rankedge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rankedge::run_cli(args, std::cout, std::cerr);
}
