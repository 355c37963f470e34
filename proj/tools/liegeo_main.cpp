#include <iostream>

#include "liegeo/cli.hpp"

int main(int argc, char** argv) {
  return liegeo::run_cli(argc, argv, std::cout, std::cerr);
}
