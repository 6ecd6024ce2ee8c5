#include "achull/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return achull::cli::run_cli(argc, argv, std::cout, std::cerr);
}
