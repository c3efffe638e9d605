#include <iostream>

#include "umeb/cli.hpp"

int main(int argc, char** argv) {
  return umeb::cli::main_entry(argc, argv, std::cout, std::cerr);
}
