#include <gfusion/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return gfusion::cli::run(argc, argv, std::cout, std::cerr);
}
