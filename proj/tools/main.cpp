#include <iostream>

#include "oml/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return oml::cli::run(args, std::cout, std::cerr);
}
