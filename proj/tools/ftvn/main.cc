#include <iostream>
#include <string>
#include <vector>

#include "ftvn/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ftvn::cli::run(args, std::cin, std::cout, std::cerr);
}
