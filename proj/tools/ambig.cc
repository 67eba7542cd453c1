#include <iostream>

#include "ambig/cli.h"

int main(int argc, char** argv) {
  return ambig::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
