#include <iostream>

#include "tad/cli/cli.h"

int main(int argc, char** argv) {
  return tad::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
