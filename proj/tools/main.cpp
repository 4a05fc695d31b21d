#include <iostream>

#include "twext/cli.hpp"

int main(int argc, char** argv) {
  return twext::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
