#include <iostream>
#include <string>
#include <vector>

#include "fairex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fairex::run_cli(args, std::cout, std::cerr);
}
