#include <iostream>

#include "c2g/cli.hpp"

int main(int argc, char** argv) { return c2g::run_cli(argc, argv, std::cout, std::cerr); }
