#include <iostream>

#include "ctrlfree/cli.hpp"

int main(int argc, char** argv) {
  return ctrlfree::cli::run(argc, argv, std::cout, std::cerr);
}
