#include <iostream>
#include <string>
#include <vector>

#include "ptalg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ptalg::cli::run_cli(args, std::cout, std::cerr);
}
