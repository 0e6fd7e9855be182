#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return ellipcenters::cli::dispatch(argc, argv, std::cout, std::cerr);
}
