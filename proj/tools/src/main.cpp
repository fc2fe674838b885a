#include <iostream>
#include <string>
#include <vector>

#include "gausstail/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gausstail::cli::run(args, std::cout, std::cerr);
}
