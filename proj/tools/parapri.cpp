#include <iostream>
#include <string>
#include <vector>

#include "parapri/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return parapri::run_cli(args, std::cout, std::cerr);
}
