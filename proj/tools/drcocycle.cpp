#include <iostream>

#include "ec/cli.hpp"

int main(int argc, char** argv) {
  return ec::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
