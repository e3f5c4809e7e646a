#include <iostream>

#include "cosmo/cli/dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cosmo::cli::run(args, std::cout, std::cerr);
}
