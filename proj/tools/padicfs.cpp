#include <iostream>
#include <string>
#include <vector>

#include "padicfs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return padicfs::runCommand(args, std::cout, std::cerr);
}
