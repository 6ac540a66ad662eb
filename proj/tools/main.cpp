#include <iostream>

#include "swapsteer/cli.hpp"

int main(int argc, char** argv) {
  return swapsteer::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
