#include <iostream>

#include "ocw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ocw::run_cli(args, std::cout, std::cerr);
}
