#include <iostream>

#include "gme/cli.hpp"

int main(int argc, char** argv) { return gme::run_cli(argc, argv, std::cout, std::cerr); }
