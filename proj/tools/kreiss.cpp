#include <iostream>
#include <string>
#include <vector>

#include "kreiss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kreiss::cli::run(args, std::cout, std::cerr);
}
