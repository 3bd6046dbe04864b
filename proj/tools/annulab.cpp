#include <iostream>
#include <string>
#include <vector>

#include "annulab/cli.hpp"

int main(int argc, char** argv) {
  return annulab::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
