#include <iostream>
#include <string>
#include <vector>

#include "hyp32/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyp32::run_cli(args, std::cout, std::cerr);
}
