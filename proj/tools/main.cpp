#include <iostream>
#include <string>
#include <vector>

#include "clfd/io/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return clfd::io::cli_main(args, std::cout, std::cerr);
}
