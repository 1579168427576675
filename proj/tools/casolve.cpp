#include <iostream>

#include "ca/cli.hpp"

int main(int argc, char** argv) { return ca::run_cli(argc, argv, std::cout, std::cerr); }
