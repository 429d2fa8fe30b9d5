#include <iostream>

#include "lovx/cli.hpp"

int main(int argc, char** argv) {
  return lovx::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
