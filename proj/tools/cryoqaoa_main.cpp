#include <iostream>

#include "cryoqaoa/cli/commands.hpp"

int main(int argc, char** argv) {
  return cryoqaoa::cli::run_cli(argc, argv, std::cout, std::cerr);
}
