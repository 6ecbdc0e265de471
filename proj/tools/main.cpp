#include <iostream>

#include "matinv2/cli.hpp"

int main(int argc, char** argv) {
  return matinv2::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
