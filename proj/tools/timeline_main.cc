#include <iostream>

#include "timeline/cli.h"

int main(int argc, char **argv) {
  return timeline::RunCli(argc, argv, std::cout, std::cerr);
}
