#include <iostream>

#include "virtgen/cli.hpp"

int main(int argc, char** argv) { return virtgen::run_cli(argc, argv, std::cout, std::cerr); }
