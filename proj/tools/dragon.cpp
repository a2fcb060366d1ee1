#include <iostream>
#include <string>
#include <vector>

#include "dragon_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dragon::cli::run_cli(args, std::cout, std::cerr);
}
