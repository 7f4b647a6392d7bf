#include <iostream>
#include <string>
#include <vector>

#include "commassoc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return commassoc::run_cli(args, std::cout, std::cerr);
}
