#include <iostream>

#include "qcav/cli/commands.hpp"

int main(int argc, char **argv) {
  return qcav::cli::run(argc, argv, std::cout, std::cerr);
}
