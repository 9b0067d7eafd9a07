#include <iostream>
#include <string>
#include <vector>

#include "peertrust/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return peertrust::cli::run(args, std::cout, std::cerr);
}
