#include <iostream>

#include "lukas/cli.hpp"

int main(int argc, char** argv) {
  return lukas::cli::run(argc, argv, std::cout, std::cerr);
}
