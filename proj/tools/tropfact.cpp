#include <iostream>

#include "tropfact/cli.hpp"

int main(int argc, char** argv) {
  return tropfact::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
