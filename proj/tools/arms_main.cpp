#include <iostream>

#include "arms/harness/cli.hpp"

int main(int argc, char** argv) {
  return arms::harness::run_cli(argc, argv, std::cout, std::cerr);
}
