#include <iostream>

#include "qfe/cli.hpp"

int main(int argc, char** argv) {
  return qfe::cli::run(argc, argv, std::cout, std::cerr);
}
