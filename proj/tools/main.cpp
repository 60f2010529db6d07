#include <iostream>
#include <string>
#include <vector>

#include "nabundle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nabundle::cli::run(args, std::cout, std::cerr);
}
