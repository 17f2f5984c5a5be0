#include <iostream>
#include <string>
#include <vector>

#include "searchlab/cli.h"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return searchlab::run_cli(args, std::cout, std::cerr);
}
