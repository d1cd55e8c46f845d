#include "wclique/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return wclique::run_cli(argc, argv, std::cout, std::cerr); }
